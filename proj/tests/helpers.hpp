#ifndef CSMOOTH_TESTS_HELPERS_HPP
#define CSMOOTH_TESTS_HELPERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "csmooth/circuit.hpp"
#include "csmooth/circuit_io.hpp"
#include "csmooth/generators.hpp"
#include "csmooth/semiring.hpp"
#include "csmooth/vtree.hpp"

namespace csmooth::testutil {

// (x1 & x2) | x3, not smooth. Variables renumbered 1..3 from the usual
// x0,x1,x2 presentation.
inline const char* kFig1aText =
    "lc 5 3\n"
    "L 1\n"
    "L 2\n"
    "A 2 0 1\n"
    "L 3\n"
    "O 2 2 3\n";

// vtree ((x1,x2),x3)
inline const char* kFig1VtreeText =
    "vtree 5\n"
    "L 0 1\n"
    "L 1 2\n"
    "I 2 0 1\n"
    "L 3 3\n"
    "I 4 2 3\n";

inline Circuit fig1a() { return parse_circuit(std::string(kFig1aText)); }
inline Vtree fig1_vtree() { return parse_vtree(std::string(kFig1VtreeText)); }

// Hand-smoothed equivalent of fig1a:
// ((x1&x2)&(x3|-x3)) | (x3 & (x1|-x1) & (x2|-x2))
inline Circuit fig1b() {
    Circuit c;
    c.set_num_vars(3);
    GateId x1 = c.add_literal(Literal{1});
    GateId x2 = c.add_literal(Literal{2});
    GateId x3 = c.add_literal(Literal{3});
    GateId nx1 = c.add_literal(Literal{-1});
    GateId nx2 = c.add_literal(Literal{-2});
    GateId nx3 = c.add_literal(Literal{-3});
    GateId t1 = c.add_or({x1, nx1});
    GateId t2 = c.add_or({x2, nx2});
    GateId t3 = c.add_or({x3, nx3});
    GateId a12 = c.add_and({x1, x2});
    GateId left = c.add_and({a12, t3});
    GateId r1 = c.add_and({x3, t1});
    GateId right = c.add_and({r1, t2});
    c.add_or({left, right});
    return c;
}

// Deterministic circuit for the same function: x3 | ((x1&x2) & -x3),
// structured w.r.t. fig1_vtree and not smooth.
inline Circuit fig1_deterministic() {
    Circuit c;
    c.set_num_vars(3);
    GateId x1 = c.add_literal(Literal{1});
    GateId x2 = c.add_literal(Literal{2});
    GateId x3 = c.add_literal(Literal{3});
    GateId nx3 = c.add_literal(Literal{-3});
    GateId a12 = c.add_and({x1, x2});
    GateId branch = c.add_and({a12, nx3});
    c.add_or({x3, branch});
    return c;
}

// All satisfying full assignments, brute force; n must be small.
inline std::vector<std::vector<bool>> enumerate_models(const Circuit& c) {
    std::vector<std::vector<bool>> models;
    const std::uint32_t n = c.num_vars();
    for (std::uint64_t idx = 0; idx < (1ull << n); ++idx) {
        std::vector<bool> a(n);
        for (std::uint32_t v = 0; v < n; ++v) a[v] = (idx >> v) & 1;
        if (evaluate(c, a)) models.push_back(a);
    }
    return models;
}

// Brute-force full-universe AMC over doubles: sum over models of the
// product of all n literal weights.
inline double brute_force_wmc(const Circuit& c, const LiteralWeights<ProbSemiring>& w) {
    double total = 0.0;
    for (const auto& model : enumerate_models(c)) {
        double prod = 1.0;
        for (std::uint32_t v = 1; v <= c.num_vars(); ++v)
            prod *= model[v - 1] ? w.pos[v] : w.neg[v];
        total += prod;
    }
    return total;
}

inline LiteralWeights<ProbSemiring> random_prob_weights(std::uint32_t n, Rng& rng,
                                                        double lo = 0.1, double hi = 1.0) {
    LiteralWeights<ProbSemiring> w(n);
    for (std::uint32_t v = 1; v <= n; ++v) {
        w.pos[v] = lo + (hi - lo) * rng.unit();
        w.neg[v] = lo + (hi - lo) * rng.unit();
    }
    return w;
}

}  // namespace csmooth::testutil

#endif
