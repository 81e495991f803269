#include <doctest.h>

#include "csmooth/circuit_io.hpp"
#include "csmooth/generators.hpp"
#include "csmooth/smoothing.hpp"
#include "csmooth/structure.hpp"
#include "csmooth/validate.hpp"
#include "helpers.hpp"

using namespace csmooth;
using namespace csmooth::testutil;

TEST_CASE("worstcase interval [2,3] over four variables is x1 & x4") {
    auto inst = build_worstcase(4, {{2, 3}});
    const Circuit& c = inst.circuit;
    CHECK(c.kind(c.root()) == GateKind::Or);
    REQUIRE(c.fanin(c.root()) == 1);
    GateId g1 = c.children(c.root())[0];
    REQUIRE(c.kind(g1) == GateKind::And);
    auto vars = compute_vars(c);
    CHECK(vars[g1] == std::vector<VarId>{1, 4});
    CHECK(infer_structure_map(c, inst.vtree).ok);
}

TEST_CASE("worstcase instances are structured and sized as expected") {
    auto inst = gen_worstcase(16, 8, 3);
    CHECK(infer_structure_map(inst.circuit, inst.vtree).ok);
    CHECK(check_decomposable(inst.circuit).ok);
    // every product misses Theta(n) variables but costs O(1) gates
    CHECK(inst.circuit.num_edges() < 8 * 20);
    for (const auto& iv : inst.intervals) CHECK(iv.length() >= 16 - 8);
    // smoothing gaps per OR child stay within two intervals by construction
    GapAnalysis ga = analyze_gaps(inst.circuit, inst.vtree, GapTargets::Span);
    for (const auto& site : ga.sites) {
        std::size_t count = !site.gaps[0].empty() + !site.gaps[1].empty();
        CHECK(count <= 2);
    }
}

TEST_CASE("generation is a pure function of the seed") {
    auto a = gen_worstcase(32, 16, 42);
    auto b = gen_worstcase(32, 16, 42);
    CHECK(serialize_circuit(a.circuit) == serialize_circuit(b.circuit));
    CHECK(serialize_vtree(a.vtree) == serialize_vtree(b.vtree));
    auto c = gen_worstcase(32, 16, 43);
    CHECK(serialize_circuit(a.circuit) != serialize_circuit(c.circuit));

    auto r1 = gen_random_structured(9, 70, 7, true);
    auto r2 = gen_random_structured(9, 70, 7, true);
    CHECK(serialize_circuit(r1.circuit) == serialize_circuit(r2.circuit));
    CHECK(serialize_vtree(r1.vtree) == serialize_vtree(r2.vtree));

    auto ch1 = gen_chain_random(12, 5, 1);
    auto ch2 = gen_chain_random(12, 5, 1);
    CHECK(serialize_circuit(ch1.circuit) == serialize_circuit(ch2.circuit));
}

TEST_CASE("chain circuit over five variables matches the construction count") {
    Circuit c = gen_chain(5, {{3, 3}});
    // 5 literals + 4 prefix ANDs + 4 suffix ANDs + G_1 + root
    CHECK(c.num_gates() == 15);
    CHECK(c.kind(c.root()) == GateKind::Or);
    CHECK(c.fanin(c.root()) == 3);  // G_1, p_n, s_1
    // G_1 = p_2 & s_4
    GateId g1 = c.children(c.root())[0];
    auto vars = compute_vars(c);
    CHECK(vars[g1] == std::vector<VarId>{1, 2, 4, 5});
    CHECK(check_decomposable(c).ok);
    CHECK_FALSE(check_smooth(c).ok);

    CHECK_THROWS_AS(gen_chain(5, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(gen_chain(5, {{4, 5}}), std::invalid_argument);
}

TEST_CASE("the three-interval chain instance reproduces the reference wiring") {
    Circuit c = gen_chain(5, {{3, 3}, {2, 3}, {2, 2}});
    auto vars = compute_vars(c);
    auto kids = c.children(c.root());
    REQUIRE(kids.size() == 5);
    // G_i misses exactly its interval
    CHECK(vars[kids[0]] == std::vector<VarId>{1, 2, 4, 5});
    CHECK(vars[kids[1]] == std::vector<VarId>{1, 4, 5});
    CHECK(vars[kids[2]] == std::vector<VarId>{1, 3, 4, 5});
    CHECK(vars[kids[3]] == std::vector<VarId>{1, 2, 3, 4, 5});  // p_n
    CHECK(vars[kids[4]] == std::vector<VarId>{1, 2, 3, 4, 5});  // s_1
}

TEST_CASE("random structured instances respect their vtree") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto inst = gen_random_structured(3 + seed % 9, 50, seed, false);
        CHECK(infer_structure_map(inst.circuit, inst.vtree).ok);
        Circuit back = parse_circuit(serialize_circuit(inst.circuit));
        CHECK(back == inst.circuit);
    }
}

TEST_CASE("deterministic mode passes the brute-force validator on every seed") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto inst = gen_random_structured(3 + seed % 10, 60, seed, true);
        CHECK(inst.deterministic);
        CHECK(check_deterministic(inst.circuit).ok);
    }
}

TEST_CASE("at least 30 percent of OR edges carry smoothing gaps") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto inst = gen_random_structured(4 + seed % 8, 60, seed, seed % 2);
        std::size_t or_edges = 0;
        for (GateId g = 0; g < inst.circuit.num_gates(); ++g)
            if (inst.circuit.kind(g) == GateKind::Or) or_edges += inst.circuit.fanin(g);
        GapAnalysis ga = analyze_gaps(inst.circuit, inst.vtree, GapTargets::VtreeFull);
        std::size_t gap_or_edges = 0;
        for (const auto& site : ga.sites)
            if (inst.circuit.kind(site.parent) == GateKind::Or) ++gap_or_edges;
        CHECK(gap_or_edges * 10 >= or_edges * 3);
    }
}

TEST_CASE("ladder points hit their target sizes roughly") {
    for (std::size_t target : {40000u, 400000u}) {
        auto p = worstcase_ladder_point(target);
        auto inst = gen_worstcase(p.n, p.m, 11);
        double ratio = static_cast<double>(inst.circuit.num_edges()) / target;
        CHECK(ratio > 0.6);
        CHECK(ratio < 1.6);
    }
}
