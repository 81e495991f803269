#include "csmooth/inference.hpp"

namespace csmooth::detail {

std::vector<bool> mentioned_vars(const Circuit& c) {
    std::vector<bool> reachable(c.num_gates(), false);
    reachable[c.root()] = true;
    std::vector<bool> mentioned(c.num_vars() + 1, false);
    for (GateId g = c.root() + 1; g-- > 0;) {
        if (!reachable[g]) continue;
        if (c.kind(g) == GateKind::Literal) mentioned[c.literal(g).var()] = true;
        for (GateId k : c.children(g)) reachable[k] = true;
    }
    return mentioned;
}

}  // namespace csmooth::detail
