// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// One front door for every solver. Picks exact rational arithmetic when all
// weights are integral, routes maximize through weight negation, and handles
// graphs that are not strongly connected either by component decomposition
// (the optimum over components is the global optimum) or, when decomposition
// is switched off, by adding an expensive Hamiltonian cycle whose weight is
// too large to ever win but makes the graph strongly connected.

#include <cstdint>
#include <vector>

#include "ocm/bsp.hpp"
#include "ocm/graph.hpp"
#include "ocm/rational.hpp"

namespace ocm {

enum class Algo {
    HowardSeq,  // sequential policy iteration
    HowardPar,  // bulk-synchronous kernel decomposition of the same iteration
    Lawler,     // feasibility bisection
    Tree,       // parametric shortest-path tree sweep
    OracleEnum, // exhaustive cycle enumeration (n <= 14)
    OracleDp,   // walk-length dynamic program (n <= 2000)
};

enum class SccStrategy {
    Tarjan,   // sequential component decomposition
    Parallel, // trim + pivot reachability decomposition on the engine
    Off,      // no decomposition: solve the Hamiltonian-augmented graph
};

struct SolveOptions {
    Algo algo = Algo::HowardSeq;
    Objective objective = Objective::Minimize;
    SccStrategy scc = SccStrategy::Tarjan;
    double epsilon = 1e-9; // bisection stop width (Lawler only)
    EngineOptions engine;  // schedule for the data-parallel lanes
};

struct SolveStats {
    std::uint32_t outer_iters = 0;   // policy rebuilds / probes / tree events
    std::uint32_t spf_passes = 0;    // improvement passes or feasibility scans
    std::uint64_t launches = 0;      // engine kernel launches
    std::uint64_t fixpoint_iters = 0;
    std::uint32_t regions = 0;
    std::uint32_t trivial_regions = 0;
};

struct Solution {
    bool has_cycle = false;
    bool exact = false;  // mu_exact is authoritative
    Rational mu_exact{};
    double mu = 0.0;     // optimal cycle mean (double view)
    std::vector<Vertex> cycle_vertices; // an optimal cycle, when the solver yields one
    SolveStats stats;
};

// Components decomposition is meaningful for the policy-iteration lanes only;
// the other solvers accept arbitrary digraphs natively and ignore opt.scc.
Solution solve(const Graph& g, const SolveOptions& opt = {});

} // namespace ocm
