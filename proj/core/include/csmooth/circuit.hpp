#ifndef CSMOOTH_CIRCUIT_HPP
#define CSMOOTH_CIRCUIT_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace csmooth {

using GateId = std::uint32_t;
using VarId = std::uint32_t;  // 1-based, dense in [1, num_vars]

enum class GateKind : std::uint8_t { Literal, True, False, And, Or };

// Signed literal: +v / -v for variable v.
struct Literal {
    std::int32_t value = 0;

    VarId var() const { return static_cast<VarId>(value < 0 ? -value : value); }
    bool positive() const { return value > 0; }
    Literal negated() const { return Literal{-value}; }
    friend bool operator==(Literal a, Literal b) { return a.value == b.value; }
};

// A gate-level circuit stored as a flat DAG in topological order: every
// child id is strictly smaller than its parent's id, and the root is the
// last gate. Children are kept in CSR form so multi-million-gate circuits
// stay cheap to build and walk.
class Circuit {
public:
    Circuit() { child_off_.push_back(0); }

    std::size_t num_gates() const { return kinds_.size(); }
    std::uint32_t num_vars() const { return num_vars_; }
    void set_num_vars(std::uint32_t n) { num_vars_ = n; }

    GateId root() const { return static_cast<GateId>(kinds_.size() - 1); }
    bool empty() const { return kinds_.empty(); }

    GateKind kind(GateId g) const { return kinds_[g]; }
    Literal literal(GateId g) const { return Literal{payload_[g]}; }

    std::span<const GateId> children(GateId g) const {
        return {children_.data() + child_off_[g], child_off_[g + 1] - child_off_[g]};
    }
    std::size_t fanin(GateId g) const { return child_off_[g + 1] - child_off_[g]; }

    // Circuit size m: total number of edges.
    std::size_t num_edges() const { return children_.size(); }

    GateId add_literal(Literal lit) {
        kinds_.push_back(GateKind::Literal);
        payload_.push_back(lit.value);
        child_off_.push_back(static_cast<std::uint32_t>(children_.size()));
        return static_cast<GateId>(kinds_.size() - 1);
    }
    GateId add_constant(bool value) {
        kinds_.push_back(value ? GateKind::True : GateKind::False);
        payload_.push_back(0);
        child_off_.push_back(static_cast<std::uint32_t>(children_.size()));
        return static_cast<GateId>(kinds_.size() - 1);
    }
    GateId add_gate(GateKind k, std::span<const GateId> kids) {
        const GateId id = static_cast<GateId>(kinds_.size());
        for (GateId c : kids) {
            if (c >= id) throw std::invalid_argument("circuit: child id must precede gate id");
        }
        kinds_.push_back(k);
        payload_.push_back(0);
        children_.insert(children_.end(), kids.begin(), kids.end());
        child_off_.push_back(static_cast<std::uint32_t>(children_.size()));
        return id;
    }
    GateId add_and(std::span<const GateId> kids) { return add_gate(GateKind::And, kids); }
    GateId add_or(std::span<const GateId> kids) { return add_gate(GateKind::Or, kids); }
    GateId add_and(std::initializer_list<GateId> kids) {
        return add_gate(GateKind::And, std::span<const GateId>(kids.begin(), kids.size()));
    }
    GateId add_or(std::initializer_list<GateId> kids) {
        return add_gate(GateKind::Or, std::span<const GateId>(kids.begin(), kids.size()));
    }

    void reserve(std::size_t gates, std::size_t edges) {
        kinds_.reserve(gates);
        payload_.reserve(gates);
        child_off_.reserve(gates + 1);
        children_.reserve(edges);
    }

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.num_vars_ == b.num_vars_ && a.kinds_ == b.kinds_ && a.payload_ == b.payload_ &&
               a.child_off_ == b.child_off_ && a.children_ == b.children_;
    }

private:
    std::vector<GateKind> kinds_;
    std::vector<std::int32_t> payload_;      // literal value for Literal gates
    std::vector<std::uint32_t> child_off_;   // size num_gates()+1
    std::vector<GateId> children_;
    std::uint32_t num_vars_ = 0;
};

// Standard boolean semantics; AND of 0 children is true, OR of 0 children
// is false.
bool evaluate(const Circuit& c, const std::vector<bool>& assignment);

// Evaluates 64 assignments at once. Assignment index = block*64 + bit;
// variable v is true iff bit v-1 of the index is set.
std::uint64_t evaluate_block(const Circuit& c, std::uint64_t block,
                             std::vector<std::uint64_t>& scratch);

}  // namespace csmooth

#endif
