#ifndef CSMOOTH_VALIDATE_HPP
#define CSMOOTH_VALIDATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "csmooth/circuit.hpp"

namespace csmooth {

// Brute-force validators enumerate all 2^n assignments and refuse inputs
// above this many variables.
inline constexpr std::uint32_t kMaxBruteForceVars = 24;

// Per-gate variable sets (sorted, deduplicated). vars of a literal is its
// variable, constants have none, internal gates take the union of their
// children. Desk-scale: total set storage can reach O(gates * vars).
std::vector<std::vector<VarId>> compute_vars(const Circuit& c);

// compute_vars with an abort budget on total stored entries; returns
// nullopt when exceeded.
std::optional<std::vector<std::vector<VarId>>> compute_vars_budgeted(const Circuit& c,
                                                                     std::size_t max_entries);

struct DecomposabilityCheck {
    bool ok = true;
    GateId gate = 0;       // offending AND gate
    VarId shared_var = 0;  // variable appearing under two children
};
DecomposabilityCheck check_decomposable(const Circuit& c);

struct SmoothnessCheck {
    bool ok = true;
    GateId gate = 0;  // offending OR gate
    GateId child_a = 0, child_b = 0;
};
SmoothnessCheck check_smooth(const Circuit& c);
// Budgeted variant: nullopt when the vars computation exceeds max_entries.
std::optional<SmoothnessCheck> check_smooth_budgeted(const Circuit& c, std::size_t max_entries);

struct DeterminismCheck {
    bool ok = true;
    GateId gate = 0;                // OR gate with two true children
    std::vector<bool> witness;     // full assignment exhibiting the violation
};
// Throws std::invalid_argument when num_vars > kMaxBruteForceVars.
DeterminismCheck check_deterministic(const Circuit& c);

struct EquivalenceCheck {
    bool ok = true;
    std::vector<bool> counterexample;
};
// Throws std::invalid_argument on mismatched num_vars or too many variables.
EquivalenceCheck check_equivalent(const Circuit& a, const Circuit& b);

}  // namespace csmooth

#endif
