// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ocm/alt_solvers.hpp"
#include "ocm/oracle.hpp"
#include "support/test_graphs.hpp"

using namespace ocm;

namespace {

// Probe budget: interval [wmin, wmax] halves every probe until it is
// narrower than epsilon.
std::uint32_t bisection_budget(const Graph& g, double epsilon) {
    if (g.m == 0)
        return 0;
    double lo = g.fwd_weight[0], hi = g.fwd_weight[0];
    for (EdgeId e = 1; e < g.m; ++e) {
        lo = std::min(lo, g.fwd_weight[e]);
        hi = std::max(hi, g.fwd_weight[e]);
    }
    if (hi - lo < epsilon)
        return 0;
    return static_cast<std::uint32_t>(std::ceil(std::log2((hi - lo) / epsilon)));
}

// The reported cycle is a real closed walk and its exact mean is `want`.
void check_cycle(const Graph& g, const std::vector<EdgeId>& edges, const Rational& want) {
    REQUIRE_FALSE(edges.empty());
    std::int64_t w = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const EdgeId e = edges[i];
        const EdgeId next = edges[(i + 1) % edges.size()];
        CHECK(g.fwd_target[e] == g.fwd_source[next]);
        w += g.weight_int(e);
    }
    CHECK(Rational(w, static_cast<std::int64_t>(edges.size())) == want);
}

} // namespace

TEST_SUITE_BEGIN("alt_solvers");

TEST_CASE("bisection solver pins the two cycle exactly") {
    const Graph g = testing::two_cycle(2, 4);
    const LawlerResult r = lawler_solve(g, 1e-6);
    REQUIRE(r.has_cycle);
    REQUIRE(r.exact);
    CHECK(r.mean_exact == Rational(3, 1));
    CHECK(r.mean == 3.0);
    CHECK(r.lambda_lo <= 3.0);
    CHECK(r.lambda_hi >= 3.0);
    CHECK(r.lambda_hi - r.lambda_lo <= 1e-6);
    CHECK(r.iterations <= bisection_budget(g, 1e-6)); // = 21
    CHECK(r.exact_probes >= 1);
    check_cycle(g, r.cycle_edges, Rational(3, 1));
}

TEST_CASE("bisection solver handles a lone self-loop") {
    const LawlerResult r = lawler_solve(testing::self_loop(5), 1e-9);
    REQUIRE(r.has_cycle);
    REQUIRE(r.exact);
    CHECK(r.mean_exact == Rational(5, 1));
    CHECK(r.iterations == 0); // degenerate interval, exact probes do the work
    CHECK(r.exact_probes >= 1);
}

TEST_CASE("bisection solver certifies acyclic graphs") {
    const LawlerResult r = lawler_solve(testing::diamond_dag(), 1e-9);
    CHECK_FALSE(r.has_cycle);
    CHECK(r.exact_probes >= 1); // the certifying probe above every weight
    CHECK(r.cycle_edges.empty());
}

TEST_CASE("bisection solver rejects a non-positive epsilon") {
    CHECK_THROWS_AS(lawler_solve(testing::self_loop(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lawler_solve(testing::self_loop(), -1e-3), std::invalid_argument);
}

TEST_CASE("bisection solver handles empty graphs") {
    CHECK_FALSE(lawler_solve(build_graph(0, {}), 1e-9).has_cycle);
    CHECK_FALSE(lawler_solve(build_graph(3, {}), 1e-9).has_cycle);
}

TEST_CASE("bisection solver agrees with the dp oracle within its budget") {
    std::mt19937_64 rng(61);
    constexpr double eps = 1e-9;
    int cyclic = 0;
    for (int it = 0; it < 250; ++it) {
        const Graph g = testing::random_graph(rng, 10);
        const DpResult dp = dp_min_cycle_mean(g);
        const LawlerResult r = lawler_solve(g, eps);
        CAPTURE(it);
        REQUIRE(r.has_cycle == dp.has_cycle);
        CHECK(r.iterations <= bisection_budget(g, eps));
        if (!dp.has_cycle)
            continue;
        ++cyclic;
        REQUIRE(r.exact);
        CHECK(r.mean_exact == dp.mean_exact);
        check_cycle(g, r.cycle_edges, dp.mean_exact);
        CHECK(r.lambda_lo <= dp.mean + 1e-12);
        CHECK(r.lambda_hi >= dp.mean - 1e-12);
    }
    CHECK(cyclic > 50);
}

TEST_CASE("bisection result is scan order independent") {
    std::mt19937_64 rng(62);
    for (int it = 0; it < 50; ++it) {
        const Graph g = testing::random_graph(rng, 9);
        const ScanOptions orders[] = {
            {ScanOptions::Order::Ascending, 1},
            {ScanOptions::Order::Descending, 1},
            {ScanOptions::Order::Shuffled, 3},
            {ScanOptions::Order::Shuffled, 17},
        };
        const LawlerResult ref = lawler_solve(g, 1e-9, orders[0]);
        for (std::size_t k = 1; k < 4; ++k) {
            const LawlerResult r = lawler_solve(g, 1e-9, orders[k]);
            CHECK(r.has_cycle == ref.has_cycle);
            if (ref.has_cycle && ref.exact && r.exact)
                CHECK(r.mean_exact == ref.mean_exact);
        }
    }
}

TEST_CASE("bisection bracket still straddles the optimum in float mode") {
    std::mt19937_64 rng(63);
    int cyclic = 0;
    for (int it = 0; it < 100; ++it) {
        const Graph g = testing::random_dyadic_graph(rng, 8);
        const DpResult dp = dp_min_cycle_mean(g);
        const LawlerResult r = lawler_solve(g, 1e-9);
        REQUIRE(r.has_cycle == dp.has_cycle);
        if (!dp.has_cycle)
            continue;
        ++cyclic;
        CHECK_FALSE(r.exact); // fractional weights stay in float mode
        CHECK(r.lambda_lo <= dp.mean + 1e-9);
        CHECK(r.lambda_hi >= dp.mean - 1e-9);
        CHECK(r.mean == doctest::Approx(dp.mean).epsilon(1e-9));
    }
    CHECK(cyclic > 20);
}

TEST_CASE("tree sweep pins the fixtures exactly") {
    SUBCASE("self-loop") {
        const TreeResult<ExactMode> r = tree_solve<ExactMode>(testing::self_loop(5));
        REQUIRE(r.has_cycle);
        CHECK(r.lambda == Rational(5, 1));
        CHECK(r.events == 1);
        CHECK(r.cycle_vertices == std::vector<Vertex>{0});
        check_cycle(testing::self_loop(5), r.cycle_edges, Rational(5, 1));
    }
    SUBCASE("two cycle") {
        const Graph g = testing::two_cycle(2, 4);
        const TreeResult<ExactMode> r = tree_solve<ExactMode>(g);
        REQUIRE(r.has_cycle);
        CHECK(r.lambda == Rational(3, 1));
        CHECK(r.events == 2);
        CHECK(r.cycle_vertices == std::vector<Vertex>{0, 1});
        check_cycle(g, r.cycle_edges, Rational(3, 1));
    }
    SUBCASE("unit cycles") {
        const TreeResult<ExactMode> r =
            tree_solve<ExactMode>(testing::unit_cycle_graph());
        REQUIRE(r.has_cycle);
        CHECK(r.lambda == Rational(1, 1));
    }
    SUBCASE("two components: global minimum wins") {
        const TreeResult<ExactMode> r =
            tree_solve<ExactMode>(testing::two_component_graph());
        REQUIRE(r.has_cycle);
        CHECK(r.lambda == Rational(3, 2));
    }
    SUBCASE("dag drains the heap") {
        const TreeResult<ExactMode> r = tree_solve<ExactMode>(testing::diamond_dag());
        CHECK_FALSE(r.has_cycle);
        CHECK(r.cycle_edges.empty());
    }
    SUBCASE("empty graph") {
        CHECK_FALSE(tree_solve<ExactMode>(build_graph(0, {})).has_cycle);
        CHECK_FALSE(tree_solve<ExactMode>(build_graph(4, {})).has_cycle);
    }
}

TEST_CASE("tree sweep agrees with the dp oracle") {
    std::mt19937_64 rng(64);
    int cyclic = 0;
    for (int it = 0; it < 300; ++it) {
        const Graph g = testing::random_graph(rng, 10);
        const DpResult dp = dp_min_cycle_mean(g);
        const TreeResult<ExactMode> r = tree_solve<ExactMode>(g);
        CAPTURE(it);
        REQUIRE(r.has_cycle == dp.has_cycle);
        if (!dp.has_cycle)
            continue;
        ++cyclic;
        CHECK(r.lambda == dp.mean_exact);
        check_cycle(g, r.cycle_edges, dp.mean_exact);
        // Reported vertices are the edge sources, anchored at the smallest.
        REQUIRE(r.cycle_vertices.size() == r.cycle_edges.size());
        for (std::size_t i = 0; i < r.cycle_edges.size(); ++i)
            CHECK(r.cycle_vertices[i] == g.fwd_source[r.cycle_edges[i]]);
        for (Vertex v : r.cycle_vertices)
            CHECK(r.cycle_vertices[0] <= v);
    }
    CHECK(cyclic > 50);
}

TEST_CASE("tree sweep tracks the oracle in float mode") {
    std::mt19937_64 rng(65);
    int cyclic = 0;
    for (int it = 0; it < 100; ++it) {
        const Graph g = testing::random_dyadic_graph(rng, 8);
        const DpResult dp = dp_min_cycle_mean(g);
        const TreeResult<FloatMode> r = tree_solve<FloatMode>(g);
        REQUIRE(r.has_cycle == dp.has_cycle);
        if (!dp.has_cycle)
            continue;
        ++cyclic;
        CHECK(r.lambda == doctest::Approx(dp.mean).epsilon(1e-9));
    }
    CHECK(cyclic > 20);
}

TEST_SUITE_END();
