// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "ocm/oracle.hpp"
#include "support/test_graphs.hpp"

using namespace ocm;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("enumeration lists simple cycles") {
    const EnumerationResult r = enumerate_cycle_means(testing::two_cycle(2, 4));
    REQUIRE(r.cycles.size() == 1);
    CHECK(r.cycles[0].length == 2);
    CHECK(r.cycles[0].weight == 6.0);
    CHECK(r.min_mean_exact() == Rational(3, 1));
}

TEST_CASE("parallel edges are distinct cycles") {
    const Graph g = build_graph(2, {{0, 1, 1}, {0, 1, 2}, {1, 0, 0}});
    const EnumerationResult r = enumerate_cycle_means(g);
    REQUIRE(r.cycles.size() == 2);
    CHECK(r.min_mean_exact() == Rational(1, 2));
}

TEST_CASE("self loop is a length-1 cycle") {
    const EnumerationResult r = enumerate_cycle_means(testing::self_loop(5));
    REQUIRE(r.cycles.size() == 1);
    CHECK(r.cycles[0].length == 1);
    CHECK(r.min_mean_exact() == Rational(5, 1));
}

TEST_CASE("enumeration size guard") {
    CHECK_THROWS_AS(enumerate_cycle_means(build_graph(15, {})), std::invalid_argument);
}

TEST_CASE("dp oracle on fixtures") {
    const DpResult two = dp_min_cycle_mean(testing::two_cycle(2, 4));
    REQUIRE(two.has_cycle);
    CHECK(two.mean_exact == Rational(3, 1));

    const DpResult dag = dp_min_cycle_mean(testing::diamond_dag());
    CHECK_FALSE(dag.has_cycle);

    const DpResult comp = dp_min_cycle_mean(testing::two_component_graph());
    REQUIRE(comp.has_cycle);
    CHECK(comp.mean_exact == Rational(3, 2));

    CHECK_THROWS_AS(dp_min_cycle_mean(build_graph(2001, {})), std::invalid_argument);
}

TEST_CASE("dp agrees with enumeration on random graphs") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        const Graph g = testing::random_graph(rng, 7);
        const EnumerationResult en = enumerate_cycle_means(g);
        const DpResult dp = dp_min_cycle_mean(g);
        REQUIRE(dp.has_cycle == en.has_cycle());
        if (dp.has_cycle) {
            REQUIRE(dp.exact);
            CHECK(dp.mean_exact == en.min_mean_exact());
        }
    }
}

TEST_CASE("dp float mode agrees with enumeration within tolerance") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 100; ++it) {
        const Graph g = testing::random_dyadic_graph(rng, 7);
        const EnumerationResult en = enumerate_cycle_means(g);
        const DpResult dp = dp_min_cycle_mean(g);
        REQUIRE(dp.has_cycle == en.has_cycle());
        if (dp.has_cycle)
            CHECK(dp.mean == doctest::Approx(en.min_mean()).epsilon(1e-9));
    }
}

TEST_SUITE_END();
