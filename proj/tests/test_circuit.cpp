#include <doctest.h>

#include "csmooth/circuit.hpp"
#include "csmooth/circuit_io.hpp"
#include "csmooth/transform.hpp"
#include "csmooth/validate.hpp"
#include "helpers.hpp"

using namespace csmooth;
using namespace csmooth::testutil;

TEST_CASE("parse_circuit reads the three-variable example") {
    Circuit c = fig1a();
    CHECK(c.num_gates() == 5);
    CHECK(c.num_vars() == 3);
    CHECK(c.kind(c.root()) == GateKind::Or);
    CHECK(c.num_edges() == 4);
    CHECK(c.literal(0) == Literal{1});
    CHECK(c.children(2)[0] == 0);
}

TEST_CASE("parse_circuit accepts minimal and unary-gate circuits") {
    Circuit single = parse_circuit(std::string("lc 1 1\nL 1\n"));
    CHECK(single.num_gates() == 1);
    CHECK(single.num_edges() == 0);

    // unary AND is legal input; edge_contract removes it later
    Circuit unary = parse_circuit(std::string("lc 2 1\nL 1\nA 1 0\n"));
    CHECK(unary.num_edges() == 1);
    CHECK(unary.fanin(unary.root()) == 1);
}

TEST_CASE("parse_circuit reports errors with line numbers") {
    CHECK_THROWS_WITH_AS(parse_circuit(std::string("lc 2 1\nL 1\nA 1 5\n")),
                         doctest::Contains("line 3"), ParseError);
    // forward reference
    CHECK_THROWS_AS(parse_circuit(std::string("lc 2 1\nA 1 1\nL 1\n")), ParseError);
    // variable out of range
    CHECK_THROWS_AS(parse_circuit(std::string("lc 1 1\nL 2\n")), ParseError);
    CHECK_THROWS_AS(parse_circuit(std::string("lc 1 1\nL 0\n")), ParseError);
    // syntax
    CHECK_THROWS_AS(parse_circuit(std::string("lc 1 1\nQ\n")), ParseError);
    CHECK_THROWS_AS(parse_circuit(std::string("nope\n")), ParseError);
    CHECK_THROWS_AS(parse_circuit(std::string("lc 2 1\nL 1\n")), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
    Circuit c = parse_circuit(std::string("# header comment\nlc 2 1\nc a comment\n\nL 1\nL -1\n"));
    CHECK(c.num_gates() == 2);
}

TEST_CASE("serialize/parse round-trip is the identity on gate lists") {
    for (const Circuit& c : {fig1a(), fig1b(), fig1_deterministic()}) {
        Circuit back = parse_circuit(serialize_circuit(c));
        CHECK(back == c);
    }
    // empty-children AND serializes as "A 0"
    Circuit c;
    c.set_num_vars(1);
    c.add_and({});
    CHECK(serialize_circuit(c) == "lc 1 1\nA 0\n");
}

TEST_CASE("compute_vars unions children and dedups shared subgates") {
    Circuit c = fig1a();
    auto vars = compute_vars(c);
    CHECK(vars[2] == std::vector<VarId>{1, 2});
    CHECK(vars[c.root()] == std::vector<VarId>{1, 2, 3});

    Circuit shared;
    shared.set_num_vars(2);
    GateId x1 = shared.add_literal(Literal{1});
    GateId x2 = shared.add_literal(Literal{2});
    GateId a = shared.add_and({x1, x2});
    shared.add_or({a, a});
    auto vs = compute_vars(shared);
    CHECK(vs[shared.root()] == std::vector<VarId>{1, 2});

    Circuit constant;
    constant.set_num_vars(1);
    constant.add_constant(true);
    CHECK(compute_vars(constant)[0].empty());
}

TEST_CASE("check_decomposable finds shared variables under AND gates") {
    CHECK(check_decomposable(fig1a()).ok);

    Circuit bad;
    bad.set_num_vars(1);
    GateId x = bad.add_literal(Literal{1});
    GateId nx = bad.add_literal(Literal{-1});
    bad.add_and({x, nx});
    auto r = check_decomposable(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.gate == 2);
    CHECK(r.shared_var == 1);

    Circuit twice;
    twice.set_num_vars(1);
    GateId y = twice.add_literal(Literal{1});
    twice.add_and({y, y});
    auto r2 = check_decomposable(twice);
    CHECK_FALSE(r2.ok);
    CHECK(r2.shared_var == 1);

    Circuit empty_and;
    empty_and.set_num_vars(1);
    empty_and.add_and({});
    CHECK(check_decomposable(empty_and).ok);
}

TEST_CASE("check_smooth distinguishes fig1a from fig1b") {
    auto r = check_smooth(fig1a());
    CHECK_FALSE(r.ok);
    CHECK(r.gate == 4);
    CHECK(check_smooth(fig1b()).ok);

    Circuit one_child;
    one_child.set_num_vars(2);
    GateId x = one_child.add_literal(Literal{1});
    one_child.add_or({x});
    CHECK(check_smooth(one_child).ok);
}

TEST_CASE("check_deterministic brute-forces small circuits") {
    Circuit excl;
    excl.set_num_vars(1);
    GateId x = excl.add_literal(Literal{1});
    GateId nx = excl.add_literal(Literal{-1});
    excl.add_or({x, nx});
    CHECK(check_deterministic(excl).ok);

    Circuit overlap;
    overlap.set_num_vars(2);
    GateId a = overlap.add_literal(Literal{1});
    GateId b = overlap.add_literal(Literal{2});
    overlap.add_or({a, b});
    auto r = check_deterministic(overlap);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness.size() == 2);
    CHECK(r.witness[0]);
    CHECK(r.witness[1]);

    CHECK(check_deterministic(fig1_deterministic()).ok);
    // the tautology-filled smooth circuit keeps fig1a's overlap at x1=x2=x3=1
    CHECK_FALSE(check_deterministic(fig1b()).ok);

    Circuit big;
    big.set_num_vars(25);
    big.add_literal(Literal{25});
    CHECK_THROWS_AS(check_deterministic(big), std::invalid_argument);
}

TEST_CASE("check_equivalent compares all assignments") {
    CHECK(check_equivalent(fig1a(), fig1b()).ok);
    CHECK(check_equivalent(fig1a(), fig1_deterministic()).ok);
    CHECK(check_equivalent(fig1a(), fig1a()).ok);

    Circuit pos, neg;
    pos.set_num_vars(1);
    pos.add_literal(Literal{1});
    neg.set_num_vars(1);
    neg.add_literal(Literal{-1});
    auto r = check_equivalent(pos, neg);
    CHECK_FALSE(r.ok);
    REQUIRE(r.counterexample.size() == 1);
}

TEST_CASE("evaluate implements standard semantics with empty-gate conventions") {
    Circuit c = fig1a();
    std::vector<bool> a{true, true, false};
    CHECK(evaluate(c, a));
    a = {false, false, false};
    CHECK_FALSE(evaluate(c, a));
    a = {false, false, true};
    CHECK(evaluate(c, a));

    Circuit t;
    t.set_num_vars(1);
    t.add_constant(true);
    std::vector<bool> any{false};
    CHECK(evaluate(t, any));

    Circuit empty_and;
    empty_and.set_num_vars(1);
    empty_and.add_and({});
    CHECK(evaluate(empty_and, any));
    Circuit empty_or;
    empty_or.set_num_vars(1);
    empty_or.add_or({});
    CHECK_FALSE(evaluate(empty_or, any));
}

TEST_CASE("normalize binarizes ANDs and prunes false OR children") {
    Circuit c;
    c.set_num_vars(3);
    GateId x1 = c.add_literal(Literal{1});
    GateId x2 = c.add_literal(Literal{2});
    GateId x3 = c.add_literal(Literal{3});
    c.add_and({x1, x2, x3});
    Circuit n = normalize(c);
    for (GateId g = 0; g < n.num_gates(); ++g)
        if (n.kind(g) == GateKind::And) CHECK((n.fanin(g) == 0 || n.fanin(g) == 2));
    CHECK(check_equivalent(c, n).ok);

    Circuit f;
    f.set_num_vars(1);
    GateId x = f.add_literal(Literal{1});
    GateId fg = f.add_constant(false);
    f.add_or({x, fg});
    Circuit nf = normalize(f);
    CHECK(nf.fanin(nf.root()) == 1);
    CHECK(check_equivalent(f, nf).ok);

    Circuit empty;
    empty.set_num_vars(1);
    empty.add_or({});
    CHECK(normalize(empty).kind(normalize(empty).root()) == GateKind::False);

    // binary false-pruned circuits come back unchanged
    Circuit already = fig1a();
    CHECK(normalize(already) == already);
    Circuit twice = normalize(f);
    CHECK(normalize(twice) == twice);
}

TEST_CASE("edge_contract removes single-child gates") {
    Circuit c;
    c.set_num_vars(1);
    GateId x = c.add_literal(Literal{1});
    GateId o = c.add_or({x});
    c.add_and({o});
    Circuit e = edge_contract(c);
    CHECK(e.num_gates() == 1);
    CHECK(e.kind(e.root()) == GateKind::Literal);

    Circuit c2;
    c2.set_num_vars(2);
    GateId y1 = c2.add_literal(Literal{1});
    GateId a = c2.add_and({y1});
    GateId y2 = c2.add_literal(Literal{2});
    c2.add_or({a, y2});
    Circuit e2 = edge_contract(c2);
    CHECK(e2.num_gates() == 3);
    CHECK(e2.fanin(e2.root()) == 2);
    CHECK(check_equivalent(c2, e2).ok);

    CHECK(edge_contract(e2) == e2);  // idempotent
    Circuit fig = fig1a();
    CHECK(edge_contract(fig) == fig);
}

TEST_CASE("normalize and edge_contract preserve equivalence on random circuits") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto inst = gen_random_structured(4 + seed % 9, 40 + (seed % 5) * 15, seed, false);
        Circuit n = normalize(inst.circuit);
        Circuit e = edge_contract(inst.circuit);
        CHECK(check_equivalent(inst.circuit, n).ok);
        CHECK(check_equivalent(inst.circuit, e).ok);
    }
}

TEST_CASE("evaluate agrees across a serialization round-trip") {
    Rng rng(7);
    auto inst = gen_random_structured(10, 80, 99, false);
    Circuit back = parse_circuit(serialize_circuit(inst.circuit));
    for (int i = 0; i < 100; ++i) {
        std::vector<bool> a(inst.circuit.num_vars());
        for (std::size_t v = 0; v < a.size(); ++v) a[v] = rng.below(2);
        CHECK(evaluate(inst.circuit, a) == evaluate(back, a));
    }
}
