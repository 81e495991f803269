#ifndef CSMOOTH_RANGESUM_HPP
#define CSMOOTH_RANGESUM_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "csmooth/vtree.hpp"  // PosInterval

namespace csmooth {

using IntervalQuery = PosInterval;

// Capped Ackermann-style table A(t,k):
//   A(t,k) = 2                                  for t <= 2 or k <= 3
//   A(t,k) = min(cap, A(t,k-3) * A(t-2, A(t,k-3)))  otherwise
// Monotone nondecreasing in both arguments; memoized.
std::uint64_t ack(std::uint32_t t, std::uint64_t k, std::uint64_t cap);

// Smallest c >= 1 with ack(2c, 3c, cap=n) >= n. The first argument is
// accepted for symmetry with the usual two-argument inverse Ackermann but
// does not influence the result: all our uses have m >= n, where the n-only
// criterion is the binding one.
std::uint32_t inverse_ack(std::uint64_t m, std::uint64_t n);

// Decreasing block-size chain a_1 >= a_2 >= ... for one outer level, plus
// the map from interval length s to the smallest index i with a_i <= s.
struct JumpIndex {
    std::vector<std::uint64_t> block_sizes;  // a_1 .. a_q, ending at 2
    std::vector<std::uint32_t> jump_to;      // [0..range], 1-based indices; entry 0 unused
};
JumpIndex build_jump_index(std::uint32_t t, std::uint64_t k, std::uint64_t range,
                           std::uint64_t cap);

// Shared DAG of semigroup additions. Leaves name input positions; each
// addition node combines two earlier nodes, operands in position order so
// non-commutative semigroups fold correctly. Padding leaves (from block
// padding) carry no position and are never reachable from an answer.
class AdditionTrace {
public:
    using NodeId = std::uint32_t;
    static constexpr std::int32_t kLeaf = -1;
    static constexpr std::int32_t kPad = -2;

    std::size_t num_nodes() const { return nodes_.size(); }
    bool is_leaf(NodeId id) const { return nodes_[id].b < 0; }
    bool is_pad(NodeId id) const { return nodes_[id].b == kPad; }
    std::uint32_t position(NodeId id) const { return static_cast<std::uint32_t>(nodes_[id].a); }
    NodeId left(NodeId id) const { return static_cast<NodeId>(nodes_[id].a); }
    NodeId right(NodeId id) const { return static_cast<NodeId>(nodes_[id].b); }

    std::size_t addition_count() const { return addition_count_; }
    const std::vector<NodeId>& answers() const { return answers_; }

    NodeId add_leaf(std::uint32_t pos) {
        nodes_.push_back({static_cast<std::int32_t>(pos), kLeaf});
        return static_cast<NodeId>(nodes_.size() - 1);
    }
    NodeId add_pad_leaf() {
        nodes_.push_back({0, kPad});
        return static_cast<NodeId>(nodes_.size() - 1);
    }
    NodeId add_sum(NodeId l, NodeId r) {
        nodes_.push_back({static_cast<std::int32_t>(l), static_cast<std::int32_t>(r)});
        ++addition_count_;
        return static_cast<NodeId>(nodes_.size() - 1);
    }
    void push_answer(NodeId id) { answers_.push_back(id); }

private:
    struct Node {
        std::int32_t a;
        std::int32_t b;
    };
    std::vector<Node> nodes_;
    std::vector<NodeId> answers_;
    std::size_t addition_count_ = 0;
};

// Preprocessed recursive block scheme over positions [1, n]: emits all
// prefix/suffix sums level by level into the trace, then answers each
// interval with at most 2c additions using the jump index.
class RangeSumScheme {
public:
    struct Level;

    RangeSumScheme(AdditionTrace& trace, std::uint32_t n, std::uint32_t t, std::uint64_t k);
    ~RangeSumScheme();
    RangeSumScheme(RangeSumScheme&&) noexcept;

    // Node covering exactly [q.lo, q.hi]; emits additions into the trace.
    AdditionTrace::NodeId solve(IntervalQuery q);

    std::size_t preprocess_additions() const { return preprocess_additions_; }
    std::size_t last_query_additions() const { return last_query_additions_; }

private:
    AdditionTrace& trace_;
    std::unique_ptr<Level> top_;
    AdditionTrace::NodeId pad_node_ = 0;
    std::uint64_t cap_ = 2;
    std::size_t preprocess_additions_ = 0;
    std::size_t last_query_additions_ = 0;
};

struct TraceBuildStats {
    std::uint32_t c = 0;                    // inverse Ackermann parameter used
    std::size_t preprocess_additions = 0;
    std::size_t max_query_additions = 0;    // max emitted by a single solve
};

// Full pipeline per the recursive scheme: c = inverse_ack(m, n), preprocess
// with (t,k) = (2c,3c), then solve every query. Total additions stay within
// 3c*n + 2c*m.
AdditionTrace build_trace(std::uint32_t n, std::span<const IntervalQuery> queries,
                          TraceBuildStats* stats = nullptr);

// Baseline: a fresh left-to-right chain per interval, no sharing.
AdditionTrace naive_trace(std::uint32_t n, std::span<const IntervalQuery> queries);

// Folds the trace over arbitrary semigroup values; op need not be
// commutative (operands are already in position order).
template <class T, class Op>
std::vector<T> evaluate_trace(const AdditionTrace& trace, std::span<const T> weights, Op op) {
    std::vector<T> value(trace.num_nodes());
    for (AdditionTrace::NodeId id = 0; id < trace.num_nodes(); ++id) {
        if (trace.is_pad(id)) continue;  // never feeds an answer
        if (trace.is_leaf(id)) {
            value[id] = weights[trace.position(id) - 1];
        } else {
            value[id] = op(value[trace.left(id)], value[trace.right(id)]);
        }
    }
    std::vector<T> out;
    out.reserve(trace.answers().size());
    for (auto id : trace.answers()) out.push_back(value[id]);
    return out;
}

// Debug dump: one node per line (`W <pos>` / `P` / `+ <l> <r>`), then one
// `ans <q> <node>` line per query.
void dump_trace(const AdditionTrace& trace, std::ostream& out);

// Positions covered by a node, expanded in order (testing aid; pads recorded
// as position 0).
std::vector<std::uint32_t> expand_node(const AdditionTrace& trace, AdditionTrace::NodeId id);

}  // namespace csmooth

#endif
