#include <doctest.h>

#include "csmooth/circuit_io.hpp"
#include "csmooth/vtree.hpp"
#include "helpers.hpp"

using namespace csmooth;
using namespace csmooth::testutil;

TEST_CASE("right-linear vtree positions follow variable order") {
    Vtree v = right_linear_vtree(3);
    CHECK(v.position_of(1) == 1);
    CHECK(v.position_of(2) == 2);
    CHECK(v.position_of(3) == 3);
    CHECK(v.node(v.root()).range == PosInterval{1, 3});
}

TEST_CASE("balanced vtree splits at the ceiling midpoint") {
    Vtree v = balanced_vtree(4);
    CHECK(v.node(v.root()).range == PosInterval{1, 4});
    CHECK(v.node(v.node(v.root()).left).range == PosInterval{1, 2});
    CHECK(v.node(v.node(v.root()).right).range == PosInterval{3, 4});

    Vtree odd = balanced_vtree(5);
    CHECK(odd.node(odd.node(odd.root()).left).range == PosInterval{1, 3});
}

TEST_CASE("vtree parse/serialize round-trip keeps the node list") {
    Vtree v = fig1_vtree();
    CHECK(v.num_vars() == 3);
    CHECK(v.node(2).range == PosInterval{1, 2});
    Vtree back = parse_vtree(serialize_vtree(v));
    CHECK(back == v);

    Vtree bal = balanced_vtree(9);
    CHECK(parse_vtree(serialize_vtree(bal)) == bal);
}

TEST_CASE("vtree parser rejects malformed trees") {
    // duplicate variable
    CHECK_THROWS_AS(parse_vtree(std::string("vtree 3\nL 0 1\nL 1 1\nI 2 0 1\n")), ParseError);
    // dangling child id
    CHECK_THROWS_AS(parse_vtree(std::string("vtree 3\nL 0 1\nL 1 2\nI 2 0 5\n")), ParseError);
    // node with two parents
    CHECK_THROWS_AS(
        parse_vtree(std::string("vtree 4\nL 0 1\nL 1 2\nI 2 0 0\nI 3 2 1\n")), ParseError);
    // duplicate id
    CHECK_THROWS_AS(parse_vtree(std::string("vtree 2\nL 0 1\nL 0 2\n")), ParseError);
    // disconnected node
    CHECK_THROWS_AS(parse_vtree(std::string("vtree 4\nL 0 1\nL 1 2\nL 3 3\nI 2 0 1\n")),
                    ParseError);
}

TEST_CASE("lca and cover agree with ranges") {
    Vtree v = balanced_vtree(8);
    VtreeNodeId l1 = v.leaf_of(1), l2 = v.leaf_of(2), l8 = v.leaf_of(8);
    CHECK(v.node(v.lca(l1, l2)).range == PosInterval{1, 2});
    CHECK(v.lca(l1, l8) == v.root());
    CHECK(v.cover({1, 2}) == v.lca(l1, l2));
    CHECK(v.node(v.cover({2, 3})).range == PosInterval{1, 4});  // straddles a midpoint
    CHECK(v.node(v.cover({4, 5})).range == PosInterval{1, 8});  // straddles the root split
    CHECK(v.is_ancestor_or_equal(v.root(), l1));
    CHECK_FALSE(v.is_ancestor_or_equal(l1, v.root()));
}

TEST_CASE("canonical_cover tiles intervals with maximal nodes") {
    Vtree v = balanced_vtree(4);
    auto whole = v.canonical_cover({1, 4});
    REQUIRE(whole.size() == 1);
    CHECK(whole[0] == v.root());

    // [2,3] is not a vtree node here: two leaves
    auto middle = v.canonical_cover({2, 3});
    REQUIRE(middle.size() == 2);
    CHECK(v.node(middle[0]).range == PosInterval{2, 2});
    CHECK(v.node(middle[1]).range == PosInterval{3, 3});

    // a suffix of a right-linear vtree is a single node
    Vtree rl = right_linear_vtree(6);
    auto suffix = rl.canonical_cover({2, 6});
    REQUIRE(suffix.size() == 1);
    CHECK(rl.node(suffix[0]).range == PosInterval{2, 6});

    // pieces always tile exactly
    Vtree big = balanced_vtree(11);
    for (std::uint32_t lo = 1; lo <= 11; ++lo) {
        for (std::uint32_t hi = lo; hi <= 11; ++hi) {
            auto cover = big.canonical_cover({lo, hi});
            std::uint32_t expect = lo;
            for (VtreeNodeId u : cover) {
                CHECK(big.node(u).range.lo == expect);
                expect = big.node(u).range.hi + 1;
            }
            CHECK(expect == hi + 1);
        }
    }
}
