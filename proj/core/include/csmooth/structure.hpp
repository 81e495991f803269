#ifndef CSMOOTH_STRUCTURE_HPP
#define CSMOOTH_STRUCTURE_HPP

#include <string>
#include <vector>

#include "csmooth/circuit.hpp"
#include "csmooth/vtree.hpp"

namespace csmooth {

// The mapping rho from gates to vtree nodes witnessing that a circuit
// respects a vtree, plus the in-order span of each gate's variables.
struct StructureMap {
    std::vector<VtreeNodeId> rho;        // per gate; assigned for constants too
    std::vector<PosInterval> var_span;   // span of vars_p in pi positions (empty for var-free gates)
};

struct StructureResult {
    bool ok = false;
    GateId offending_gate = 0;    // when !ok
    std::string reason;           // when !ok
    // When constant gates had conflicting placement demands from different
    // parents they are duplicated per parent; `circuit` is then the rewritten
    // circuit the map refers to. Otherwise it equals the input.
    Circuit circuit;
    StructureMap map;
    bool duplicated_constants = false;
};

// Computes the minimal rho:
//  - literals map to their vtree leaf,
//  - a binary AND maps to the unique node with one child's rho in its left
//    subtree and the other's in its right subtree,
//  - an OR maps to the lowest common ancestor of its children's rho,
//  - var-free gates (constants and gates built solely from them) take the
//    node demanded by their parent: the vtree child slot under an AND, the
//    parent's rho under an OR.
// Requires every AND gate to have 0 or 2 children (normalize first).
// Fails with the first offending gate when no assignment exists.
StructureResult infer_structure_map(const Circuit& c, const Vtree& v);

}  // namespace csmooth

#endif
