// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <tuple>

#include "ocm/graph.hpp"
#include "support/test_graphs.hpp"

using namespace ocm;

TEST_SUITE_BEGIN("graph");

TEST_CASE("csr groups edges by source in input order") {
    // Input deliberately interleaves sources; ids must come out grouped.
    const Graph g = build_graph(3, {{1, 0, 10}, {0, 2, 1}, {1, 2, 20}, {0, 1, 2}, {1, 0, 30}});
    REQUIRE(g.n == 3);
    REQUIRE(g.m == 5);
    // Vertex 0's group first, preserving input order within the group.
    CHECK(g.out_begin(0) == 0);
    CHECK(g.out_end(0) == 2);
    CHECK(g.fwd_target[0] == 2);
    CHECK(g.fwd_weight[0] == 1);
    CHECK(g.fwd_target[1] == 1);
    CHECK(g.fwd_weight[1] == 2);
    // Vertex 1 keeps its three edges in input order (10, 20, 30).
    CHECK(g.out_begin(1) == 2);
    CHECK(g.out_end(1) == 5);
    CHECK(g.fwd_weight[2] == 10);
    CHECK(g.fwd_weight[3] == 20);
    CHECK(g.fwd_weight[4] == 30);
    for (EdgeId e = 0; e < g.m; ++e)
        CHECK(g.fwd_source[e] == (e < 2 ? 0u : 1u));
}

TEST_CASE("backward csr mirrors the forward csr") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        const Graph g = testing::random_graph(rng, 12);
        std::vector<int> seen(g.m, 0);
        for (Vertex v = 0; v < g.n; ++v) {
            for (EdgeId s = g.in_begin(v); s != g.in_end(v); ++s) {
                const EdgeId e = g.bwd_fwd_edge[s];
                REQUIRE(e < g.m);
                CHECK(g.fwd_target[e] == v);
                CHECK(g.fwd_source[e] == g.bwd_source[s]);
                ++seen[e];
            }
        }
        for (EdgeId e = 0; e < g.m; ++e)
            CHECK(seen[e] == 1); // every edge appears in exactly one slot
    }
}

TEST_CASE("build rejects bad input") {
    CHECK_THROWS_AS(build_graph(2, {{0, 2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(2, {{2, 0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, std::numeric_limits<double>::infinity()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, std::numeric_limits<double>::quiet_NaN()}}),
                    std::invalid_argument);
}

TEST_CASE("integer exactness detection") {
    CHECK(build_graph(2, {{0, 1, 3}, {1, 0, -9}}).integer_exact);
    CHECK(build_graph(1, {}).integer_exact);
    CHECK_FALSE(build_graph(2, {{0, 1, 0.5}, {1, 0, 1}}).integer_exact);
    // Magnitudes beyond exact double integers disable the exact path.
    CHECK_FALSE(build_graph(2, {{0, 1, 9.1e15}, {1, 0, 1}}).integer_exact);
}

TEST_CASE("transpose is an involution and swaps the csr pair") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 20; ++it) {
        const Graph g = testing::random_graph(rng, 10);
        const Graph t = transpose(g);
        REQUIRE(t.n == g.n);
        REQUIRE(t.m == g.m);
        // Every edge of g appears reversed in t.
        std::vector<std::vector<double>> fwd(g.n * (std::size_t)g.n), rev(g.n * (std::size_t)g.n);
        for (EdgeId e = 0; e < g.m; ++e)
            fwd[g.fwd_source[e] * g.n + g.fwd_target[e]].push_back(g.fwd_weight[e]);
        for (EdgeId e = 0; e < t.m; ++e)
            rev[t.fwd_target[e] * g.n + t.fwd_source[e]].push_back(t.fwd_weight[e]);
        for (auto& v : fwd)
            std::sort(v.begin(), v.end());
        for (auto& v : rev)
            std::sort(v.begin(), v.end());
        CHECK(fwd == rev);

        // Double transpose restores the edge multiset and the CSR grouping
        // (order within a group may differ, ids are not promised).
        const Graph tt = transpose(t);
        CHECK(tt.fwd_index == g.fwd_index);
        auto triples = [](const Graph& x) {
            std::vector<std::tuple<Vertex, Vertex, double>> ts;
            for (EdgeId e = 0; e < x.m; ++e)
                ts.emplace_back(x.fwd_source[e], x.fwd_target[e], x.fwd_weight[e]);
            std::sort(ts.begin(), ts.end());
            return ts;
        };
        CHECK(triples(tt) == triples(g));
    }
}

TEST_CASE("negate_weights flips every weight and keeps exactness") {
    const Graph g = testing::two_cycle(2, 4);
    const Graph ng = negate_weights(g);
    CHECK(ng.integer_exact);
    CHECK(ng.fwd_weight[0] == -2);
    CHECK(ng.fwd_weight[1] == -4);
    CHECK(ng.fwd_target == g.fwd_target);
}

TEST_CASE("augment_root appends the root group last") {
    const Graph g = testing::two_cycle(2, 4);
    const Graph ag = augment_root(g);
    REQUIRE(ag.n == 3);
    REQUIRE(ag.m == 4);
    // Original ids survive.
    CHECK(ag.fwd_source[0] == 0);
    CHECK(ag.fwd_target[0] == 1);
    CHECK(ag.fwd_weight[0] == 2);
    CHECK(ag.fwd_source[1] == 1);
    CHECK(ag.fwd_weight[1] == 4);
    // Root edges in vertex order, weight 0.
    CHECK(ag.out_begin(2) == 2);
    CHECK(ag.fwd_target[2] == 0);
    CHECK(ag.fwd_target[3] == 1);
    CHECK(ag.fwd_weight[2] == 0);
    CHECK(ag.fwd_weight[3] == 0);
    CHECK(ag.in_begin(2) == ag.in_end(2)); // nothing enters the root
}

TEST_CASE("hamiltonian augmentation makes the graph one cycle richer") {
    const Graph g = testing::diamond_dag();
    const HamiltonianAugmented aug = augment_hamiltonian(g);
    CHECK(aug.graph.n == g.n);
    CHECK(aug.graph.m == g.m + g.n);
    // Default weight 2n(max|w|+1)+1 with max|w| = 3.
    CHECK(aug.big_w == 2.0 * 4 * (3 + 1) + 1);
    CHECK(aug.no_cycle_above == 3.0);
    CHECK(aug.graph.integer_exact);
    // The added cycle touches every vertex once: the ring edge is appended
    // after each vertex's original edges, so it is the last edge of every
    // source group after the stable rebuild.
    for (Vertex v = 0; v < g.n; ++v) {
        REQUIRE(aug.graph.out_begin(v) < aug.graph.out_end(v));
        const EdgeId e = aug.graph.out_end(v) - 1;
        CHECK(aug.graph.fwd_weight[e] == aug.big_w);
        CHECK(aug.graph.fwd_target[e] == (v + 1) % g.n);
    }
    std::vector<int> extra(g.n, 0);
    for (EdgeId e = 0; e < aug.graph.m; ++e)
        if (aug.graph.fwd_weight[e] == aug.big_w)
            ++extra[aug.graph.fwd_source[e]];
    for (Vertex v = 0; v < g.n; ++v)
        CHECK(extra[v] == 1);

    CHECK_THROWS_AS(augment_hamiltonian(build_graph(0, {})), std::invalid_argument);
}

TEST_CASE("has_self_loop") {
    const Graph g = build_graph(2, {{0, 0, 1}, {0, 1, 1}});
    CHECK(g.has_self_loop(0));
    CHECK_FALSE(g.has_self_loop(1));
}

TEST_SUITE_END();
