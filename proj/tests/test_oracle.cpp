#include "doctest.h"

#include "bond/oracle.hpp"
#include "test_util.hpp"

using namespace bond;
using namespace bondtest;

TEST_CASE("largest_bond_bf anchors") {
    for (int n = 3; n <= 10; ++n) CHECK(oracle::largest_bond_bf(cycle(n)).size == 2);
    CHECK(oracle::largest_bond_bf(star(3)).size == 1);
    CHECK(oracle::largest_bond_bf(clique(4)).size == 4);
    CHECK_THROWS(oracle::largest_bond_bf(Graph(1)));
    Graph big(25);
    for (int i = 0; i + 1 < 25; ++i) big.add_edge(i, i + 1);
    CHECK_THROWS(oracle::largest_bond_bf(big));
}

TEST_CASE("largest_st_bond_bf anchors") {
    CHECK(oracle::largest_st_bond_bf(cycle(4), 0, 2).size == 2);
    CHECK(oracle::largest_st_bond_bf(path(3), 0, 2).size == 1);
    CHECK(oracle::largest_st_bond_bf(bowtie(), 0, 3).size == 2);
}

TEST_CASE("largest_bond_side_size_bf") {
    auto r = oracle::largest_bond_side_size_bf(clique(4), 1);
    REQUIRE(r.has_value());
    CHECK(r->size == 3);
    r = oracle::largest_bond_side_size_bf(clique(4), 2);
    REQUIRE(r.has_value());
    CHECK(r->size == 4);
    r = oracle::largest_bond_side_size_bf(path(3), 1);
    REQUIRE(r.has_value());
    CHECK(r->size == 1);
    CHECK(r->side.to_vector() == std::vector<int>{0});  // {1} is invalid, tie -> {0}
    CHECK(!oracle::largest_bond_side_size_bf(path(2), 2).has_value());
}

TEST_CASE("largest_weight_bond_bf on weighted graphs") {
    Graph allzero(4, false, true);
    for (int i = 0; i < 4; ++i) allzero.add_edge(i, (i + 1) % 4, 0);
    CHECK(oracle::largest_weight_bond_bf(allzero).weight == 0);

    // On unweighted graphs, weight and size agree.
    Rng rng(3);
    for (int iter = 0; iter < 50; ++iter) {
        Graph g = random_connected_graph(4 + rng.below(4), rng.below(5), rng);
        CHECK(oracle::largest_weight_bond_bf(g).weight ==
              oracle::largest_bond_bf(g).size);
    }
}

TEST_CASE("max_cut_bf anchors") {
    CHECK(oracle::max_cut_bf(clique(4)).first == 4);
    CHECK(oracle::max_cut_bf(cycle(5)).first == 4);
    CHECK(oracle::max_cut_bf(path(2)).first == 1);
}

TEST_CASE("enumerate_bonds counts") {
    CHECK(oracle::enumerate_bonds(path(2)).size() == 1);
    CHECK(oracle::enumerate_bonds(path(3)).size() == 2);
    CHECK(oracle::enumerate_bonds(cycle(4)).size() == 6);
}

TEST_CASE("is_yutsis_bf frozen oracle values") {
    CHECK(oracle::is_yutsis_bf(clique(4)));
    // C_5: bound 5-5+2 = 2 equals the cycle bond, so Yutsis.
    CHECK(oracle::is_yutsis_bf(cycle(5)));
    // K_{1,3}: one leaf against the remaining star splits into two trees.
    CHECK(oracle::is_yutsis_bf(star(3)));
    // The bowtie misses its bound (largest bond 2 < 3).
    CHECK(!oracle::is_yutsis_bf(bowtie()));
}

TEST_CASE("oracle cross invariants on random graphs") {
    Rng rng(17);
    for (int iter = 0; iter < 60; ++iter) {
        Graph g = random_connected_graph(3 + rng.below(5), rng.below(6), rng);
        int n = g.num_vertices();
        Bond best = oracle::largest_bond_bf(g);
        CHECK(verify_bond(g, best.side).ok());

        // st optimum never exceeds the unconstrained optimum.
        for (int s = 0; s < n; ++s)
            for (int t = s + 1; t < n; ++t)
                CHECK(oracle::largest_st_bond_bf(g, s, t).size <= best.size);

        // side-size sweep attains the optimum somewhere
        int side_best = 0;
        for (int l = 1; l < n; ++l)
            if (auto r = oracle::largest_bond_side_size_bf(g, l))
                side_best = std::max(side_best, r->size);
        CHECK(side_best == best.size);

        CHECK(oracle::max_cut_bf(g).first >= best.size);

        for (const Bond& b : oracle::enumerate_bonds(g)) {
            CHECK(b.side.contains(0));
            CHECK(verify_bond(g, b.side).ok());
            CHECK(b.size <= yutsis_bound(g));
        }
    }
}

TEST_CASE("parallel enumeration is deterministic") {
    Graph g = clique(8);
    Bond a = oracle::largest_bond_bf(g, 1);
    Bond b = oracle::largest_bond_bf(g, 4);
    CHECK(a.size == b.size);
    CHECK(a.side == b.side);
    Bond c = oracle::largest_st_bond_bf(g, 0, 5, 1);
    Bond d = oracle::largest_st_bond_bf(g, 0, 5, 3);
    CHECK(c.side == d.side);
}
