#ifndef CSMOOTH_VTREE_HPP
#define CSMOOTH_VTREE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "csmooth/circuit.hpp"

namespace csmooth {

using VtreeNodeId = std::uint32_t;
inline constexpr VtreeNodeId kNoVtreeNode = 0xffffffffu;

// Closed interval of 1-based in-order positions. An empty interval is
// encoded as lo > hi.
struct PosInterval {
    std::uint32_t lo = 1;
    std::uint32_t hi = 0;

    bool empty() const { return lo > hi; }
    std::uint32_t length() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(const PosInterval& other) const {
        return other.empty() || (!empty() && lo <= other.lo && other.hi <= hi);
    }
    friend bool operator==(const PosInterval& a, const PosInterval& b) {
        return (a.empty() && b.empty()) || (a.lo == b.lo && a.hi == b.hi);
    }
};

// Full binary tree whose leaves biject with the variables. Every node knows
// the contiguous in-order position range of the variables below it, which is
// what makes vtree-node variable sets behave like intervals.
class Vtree {
public:
    struct Node {
        bool leaf = false;
        VarId var = 0;                    // leaf only
        VtreeNodeId left = kNoVtreeNode;  // internal only
        VtreeNodeId right = kNoVtreeNode;
        VtreeNodeId parent = kNoVtreeNode;
        PosInterval range;                // in-order positions under this node
        std::uint32_t depth = 0;
    };

    std::size_t num_nodes() const { return nodes_.size(); }
    std::uint32_t num_vars() const { return static_cast<std::uint32_t>(position_of_.size() - 1); }
    VtreeNodeId root() const { return root_; }
    const Node& node(VtreeNodeId id) const { return nodes_[id]; }

    // In-order position of a variable (1-based), and its inverse.
    std::uint32_t position_of(VarId v) const { return position_of_[v]; }
    VarId var_at(std::uint32_t pos) const { return var_at_[pos]; }
    VtreeNodeId leaf_of(VarId v) const { return leaf_of_[v]; }

    bool is_ancestor_or_equal(VtreeNodeId anc, VtreeNodeId node) const {
        return nodes_[anc].range.contains(nodes_[node].range) &&
               nodes_[anc].depth <= nodes_[node].depth;
    }

    VtreeNodeId lca(VtreeNodeId a, VtreeNodeId b) const;

    // Lowest node whose range contains [lo,hi].
    VtreeNodeId cover(const PosInterval& iv) const;

    // Decomposes [lo,hi] into the minimal ordered sequence of maximal vtree
    // nodes whose ranges exactly tile the interval (at most 2h of them).
    std::vector<VtreeNodeId> canonical_cover(const PosInterval& iv) const;

    // Construction: nodes are appended in declaration order; finalize()
    // validates tree shape and computes ranges/positions.
    VtreeNodeId add_leaf(VarId v);
    VtreeNodeId add_internal(VtreeNodeId left, VtreeNodeId right);
    void set_root(VtreeNodeId r) { root_ = r; }
    void finalize();

    friend bool operator==(const Vtree& a, const Vtree& b);

private:
    std::vector<Node> nodes_;
    VtreeNodeId root_ = kNoVtreeNode;
    std::vector<std::uint32_t> position_of_ = {0};  // index 0 unused
    std::vector<VarId> var_at_ = {0};
    std::vector<VtreeNodeId> leaf_of_ = {kNoVtreeNode};
};

// Balanced vtree over variables 1..n in order, splitting [lo,hi] at
// ceil((hi-lo+1)/2).
Vtree balanced_vtree(std::uint32_t n);

// Right-linear vtree: (x1, (x2, (x3, ...))).
Vtree right_linear_vtree(std::uint32_t n);

}  // namespace csmooth

#endif
