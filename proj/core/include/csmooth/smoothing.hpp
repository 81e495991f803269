#ifndef CSMOOTH_SMOOTHING_HPP
#define CSMOOTH_SMOOTHING_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "csmooth/circuit.hpp"
#include "csmooth/structure.hpp"
#include "csmooth/vtree.hpp"

namespace csmooth {

enum class SmoothMethod : std::uint8_t { Naive, RangeSum, Structured };
const char* to_string(SmoothMethod m);

struct SmoothingStats {
    SmoothMethod method = SmoothMethod::Naive;
    std::size_t input_edges = 0;
    std::size_t added_gates = 0;
    std::size_t added_edges = 0;
    std::size_t trace_additions = 0;  // 0 for naive and structured
    std::size_t gap_sites = 0;        // child edges that needed smoothing gates
};

struct SmoothResult {
    Circuit circuit;
    SmoothingStats stats;
};

// Thrown when the input circuit does not respect the vtree (or is not
// normalized enough for the structure map to exist).
class StructureError : public std::runtime_error {
public:
    StructureError(GateId gate, const std::string& reason)
        : std::runtime_error("gate " + std::to_string(gate) + ": " + reason), gate_(gate) {}
    GateId gate() const { return gate_; }

private:
    GateId gate_;
};

// Set difference of two vtree-node variable sets, u_parent \ u_child, as at
// most two in-order intervals. parent must be an ancestor-or-equal of child.
std::array<PosInterval, 2> gap_intervals(VtreeNodeId parent_vnode, VtreeNodeId child_vnode,
                                         const Vtree& v);

// One child edge that needs smoothing gates.
struct GapSite {
    enum class Kind : std::uint8_t {
        Pad,      // conjoin SG over `gaps` next to the child
        Replace,  // var-free tautological child: swap in SG over the target
        FalsePad  // var-free False child: conjoin SG over the target
    };
    GateId parent = 0;
    std::uint32_t child_index = 0;
    Kind kind = Kind::Pad;
    std::array<PosInterval, 2> gaps{};   // second entry may be empty
    PosInterval target;                  // vars the child must cover afterwards
    VtreeNodeId target_node = kNoVtreeNode;  // structured targets only
    VtreeNodeId child_rho = kNoVtreeNode;
};

// How gap targets are chosen:
//  - Span: pad each gate only up to the contiguous hull of its children's
//    variable spans (holes between AND children close at the vtree slot
//    boundary). Minimal padding; output not structured in general.
//  - VtreeFull: pad every child edge to the full vtree-node range of its
//    slot (AND) or its parent's rho (OR), so gates can be rebuilt from
//    per-vtree-node smoothing gates and the output stays structured.
enum class GapTargets : std::uint8_t { Span, VtreeFull };

struct GapAnalysis {
    bool already_smooth = false;   // exact pre-check succeeded; no sites
    StructureResult structure;     // circuit (possibly with duplicated constants) + map
    std::vector<GapSite> sites;
    std::vector<PosInterval> padded_span;  // per gate, span after padding
    std::size_t gap_positions = 0;         // total length of all gap intervals
};

// Collects every gap site in one bottom-up pass. Throws StructureError when
// the circuit does not respect v.
GapAnalysis analyze_gaps(const Circuit& c, const Vtree& v, GapTargets targets);

// The three smoothers. Input must be structured w.r.t. v (normalize first);
// an already-smooth circuit is returned unchanged. Output is smooth,
// decomposable and equivalent, and preserves determinism. Only
// smooth_structured keeps the output structured w.r.t. v.
SmoothResult smooth_naive(const Circuit& c, const Vtree& v);
SmoothResult smooth_rangesum(const Circuit& c, const Vtree& v);
SmoothResult smooth_structured(const Circuit& c, const Vtree& v);

SmoothResult smooth(const Circuit& c, const Vtree& v, SmoothMethod method);

}  // namespace csmooth

#endif
