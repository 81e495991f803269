#ifndef CSMOOTH_GENERATORS_HPP
#define CSMOOTH_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "csmooth/circuit.hpp"
#include "csmooth/vtree.hpp"

namespace csmooth {

// splitmix64-based generator so outputs are bit-reproducible across
// platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform-ish in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
    std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {  // inclusive
        return lo + below(hi - lo + 1);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct GeneratedInstance {
    Circuit circuit;
    Vtree vtree;
    bool deterministic = false;
    std::vector<PosInterval> intervals;  // worstcase/chain: the drawn intervals
};

// Hand-crafted smoothing stress family: m wide intervals I_1..I_m; each
// interval yields the product of the literals outside it, built following a
// balanced vtree, and all products feed one top OR gate. Every product is
// missing the Theta(n) variables of its interval, so one-variable-at-a-time
// smoothing blows up quadratically while batched range-sum smoothing stays
// near linear.
GeneratedInstance gen_worstcase(std::uint32_t n, std::uint32_t m, std::uint64_t seed);
// Deterministic core with explicit intervals (each must leave at least one
// variable uncovered on each side or the product would be empty on one end).
GeneratedInstance build_worstcase(std::uint32_t n, const std::vector<PosInterval>& intervals);

// Prefix/suffix chain family: p_1 = x_1, p_k = p_{k-1} & x_k, s_n = x_n,
// s_k = s_{k+1} & x_k, one gate p_{a-1} & s_{b+1} per interval [a,b], and a
// root OR over all of them plus p_n and s_1. Decomposable but respects no
// vtree; exercises validators and edge contraction.
Circuit gen_chain(std::uint32_t n, const std::vector<PosInterval>& intervals);
// Intervals drawn uniformly inside [2, n-1].
GeneratedInstance gen_chain_random(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

// Random structured circuits for property testing: a random vtree shape
// (Catalan-weighted splits, shuffled leaf variables) and a gate pool built
// bottom-up along it. OR children deliberately sub-select variables so most
// instances need smoothing. With deterministic=true every OR gate is a
// decision (x & a) | (-x & b) on a variable of the node, so the output is
// deterministic by construction.
GeneratedInstance gen_random_structured(std::uint32_t n, std::uint32_t target_gates,
                                        std::uint64_t seed, bool deterministic);

// Ladder helper: worstcase instance parameters aimed at a target edge count.
// Interval complements stay O(1) wide while n grows with the target, which
// is what makes the naive smoother's cost grow superlinearly along the
// ladder.
struct WorstcaseLadderPoint {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
};
WorstcaseLadderPoint worstcase_ladder_point(std::size_t target_edges);

}  // namespace csmooth

#endif
