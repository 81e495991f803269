#include "csmooth/circuit.hpp"

namespace csmooth {

bool evaluate(const Circuit& c, const std::vector<bool>& assignment) {
    std::vector<bool> val(c.num_gates());
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: {
                Literal lit = c.literal(g);
                bool v = assignment[lit.var() - 1];
                val[g] = lit.positive() ? v : !v;
                break;
            }
            case GateKind::True: val[g] = true; break;
            case GateKind::False: val[g] = false; break;
            case GateKind::And: {
                bool v = true;
                for (GateId k : c.children(g)) v = v && val[k];
                val[g] = v;
                break;
            }
            case GateKind::Or: {
                bool v = false;
                for (GateId k : c.children(g)) v = v || val[k];
                val[g] = v;
                break;
            }
        }
    }
    return val[c.root()];
}

namespace {

// Bit patterns for the first six variables within one 64-assignment block.
constexpr std::uint64_t kVarPattern[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull,
};

}  // namespace

std::uint64_t evaluate_block(const Circuit& c, std::uint64_t block,
                             std::vector<std::uint64_t>& scratch) {
    scratch.resize(c.num_gates());
    for (GateId g = 0; g < c.num_gates(); ++g) {
        switch (c.kind(g)) {
            case GateKind::Literal: {
                Literal lit = c.literal(g);
                VarId v = lit.var();
                std::uint64_t m = v <= 6 ? kVarPattern[v - 1]
                                         : ((block >> (v - 7)) & 1 ? ~0ull : 0ull);
                scratch[g] = lit.positive() ? m : ~m;
                break;
            }
            case GateKind::True: scratch[g] = ~0ull; break;
            case GateKind::False: scratch[g] = 0ull; break;
            case GateKind::And: {
                std::uint64_t m = ~0ull;
                for (GateId k : c.children(g)) m &= scratch[k];
                scratch[g] = m;
                break;
            }
            case GateKind::Or: {
                std::uint64_t m = 0ull;
                for (GateId k : c.children(g)) m |= scratch[k];
                scratch[g] = m;
                break;
            }
        }
    }
    return scratch[c.root()];
}

}  // namespace csmooth
