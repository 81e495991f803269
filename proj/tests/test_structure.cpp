#include <doctest.h>

#include "csmooth/structure.hpp"
#include "csmooth/transform.hpp"
#include "csmooth/validate.hpp"
#include "helpers.hpp"

using namespace csmooth;
using namespace csmooth::testutil;

TEST_CASE("infer_structure_map computes the minimal rho for the example") {
    Circuit c = fig1a();
    Vtree v = fig1_vtree();
    auto res = infer_structure_map(c, v);
    REQUIRE(res.ok);
    CHECK(res.map.rho[2] == 2);          // AND maps to the node over {x1,x2}
    CHECK(res.map.rho[c.root()] == v.root());
    CHECK(res.map.rho[0] == v.leaf_of(1));
    CHECK(res.map.var_span[2] == PosInterval{1, 2});
    CHECK(res.map.var_span[c.root()] == PosInterval{1, 3});
}

TEST_CASE("AND children must land in left/right slots in order") {
    // AND(x2, x1) under vtree (x1, x2): left child maps into the right subtree
    Circuit c;
    c.set_num_vars(2);
    GateId x2 = c.add_literal(Literal{2});
    GateId x1 = c.add_literal(Literal{1});
    c.add_and({x2, x1});
    Vtree v = right_linear_vtree(2);
    auto res = infer_structure_map(c, v);
    CHECK_FALSE(res.ok);
    CHECK(res.offending_gate == 2);

    Circuit ok;
    ok.set_num_vars(2);
    GateId a = ok.add_literal(Literal{1});
    GateId b = ok.add_literal(Literal{2});
    ok.add_and({a, b});
    CHECK(infer_structure_map(ok, v).ok);
}

TEST_CASE("single literal maps to its leaf") {
    Circuit c;
    c.set_num_vars(3);
    c.add_literal(Literal{2});
    Vtree v = balanced_vtree(3);
    auto res = infer_structure_map(c, v);
    REQUIRE(res.ok);
    CHECK(res.map.rho[0] == v.leaf_of(2));
}

TEST_CASE("non-binary AND gates are rejected") {
    Circuit c;
    c.set_num_vars(3);
    GateId a = c.add_literal(Literal{1});
    GateId b = c.add_literal(Literal{2});
    GateId d = c.add_literal(Literal{3});
    c.add_and({a, b, d});
    auto res = infer_structure_map(c, balanced_vtree(3));
    CHECK_FALSE(res.ok);
    CHECK(infer_structure_map(normalize(c), balanced_vtree(3)).ok);
}

TEST_CASE("constants take the slot their parent demands") {
    // AND(x1, True) under (x1, x2): the constant fills the right slot
    Circuit c;
    c.set_num_vars(2);
    GateId x1 = c.add_literal(Literal{1});
    GateId t = c.add_constant(true);
    c.add_and({x1, t});
    Vtree v = right_linear_vtree(2);
    auto res = infer_structure_map(c, v);
    REQUIRE(res.ok);
    CHECK(res.map.rho[1] == v.leaf_of(2));
    CHECK(v.node(res.map.rho[2]).range == PosInterval{1, 2});

    // under an OR parent the constant inherits the parent's node
    Circuit d;
    d.set_num_vars(2);
    GateId y1 = d.add_literal(Literal{1});
    GateId y2 = d.add_literal(Literal{2});
    GateId both = d.add_and({y1, y2});
    GateId tt = d.add_constant(true);
    d.add_or({both, tt});
    auto res2 = infer_structure_map(d, v);
    REQUIRE(res2.ok);
    CHECK(res2.map.rho[3] == res2.map.rho[d.root()]);
}

TEST_CASE("a shared constant with conflicting demands is duplicated per parent") {
    // the same True gate feeds the right slot of one AND and the left slot
    // of another
    Circuit c;
    c.set_num_vars(2);
    GateId x1 = c.add_literal(Literal{1});
    GateId x2 = c.add_literal(Literal{2});
    GateId t = c.add_constant(true);
    GateId a1 = c.add_and({x1, t});
    GateId a2 = c.add_and({t, x2});
    c.add_or({a1, a2});
    Vtree v = right_linear_vtree(2);
    auto res = infer_structure_map(c, v);
    REQUIRE(res.ok);
    CHECK(res.duplicated_constants);
    CHECK(res.circuit.num_gates() == c.num_gates() + 1);
    CHECK(check_equivalent(c, res.circuit).ok);
    // both instances carry the node their own parent wanted
    REQUIRE(res.map.rho.size() == res.circuit.num_gates());
}

TEST_CASE("var-free gates that need an internal node fail on leaf slots") {
    // AND(True,True) demanded at a leaf: impossible
    Circuit c;
    c.set_num_vars(1);
    GateId t1 = c.add_constant(true);
    GateId t2 = c.add_constant(true);
    GateId tt = c.add_and({t1, t2});
    GateId x = c.add_literal(Literal{1});
    c.add_or({x, tt});
    Vtree v = right_linear_vtree(1);
    auto res = infer_structure_map(c, v);
    CHECK_FALSE(res.ok);
}

TEST_CASE("accepted circuits are decomposable and spans sit inside rho ranges") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto inst = gen_random_structured(3 + seed % 10, 30 + (seed % 7) * 10, seed, seed % 2);
        auto res = infer_structure_map(inst.circuit, inst.vtree);
        REQUIRE(res.ok);
        CHECK(check_decomposable(res.circuit).ok);
        for (GateId g = 0; g < res.circuit.num_gates(); ++g) {
            if (res.map.var_span[g].empty()) continue;
            CHECK(inst.vtree.node(res.map.rho[g]).range.contains(res.map.var_span[g]));
        }
    }
}
