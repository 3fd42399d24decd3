// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Benchmark model generator. A scenario is one client's cyclic state
// machine with per-transition costs; a system is k clients interleaved,
// optionally arbitrated by one shared server (a transition may acquire it,
// enabled only while it is free, or release it, enabled only for the
// holder). The composite graph has one vertex per reachable composite state
// and one edge per enabled transition, so every edge advances exactly one
// client.
//
// Vertex numbering is breadth-first discovery order from the initial state,
// with clients and transitions explored in declaration order; generation is
// therefore a pure function of (scenario, clients) and regenerating a model
// reproduces it bit for bit.
//
// The natural objective on these models is the maximum cycle mean: the worst
// sustained cost rate the system can be driven into.

#include <cstdint>
#include <string>
#include <vector>

#include "ocm/graph.hpp"

namespace ocm {

struct Scenario {
    struct Transition {
        std::uint32_t from = 0;
        std::uint32_t to = 0;
        std::int64_t cost = 0;
        bool acquires = false; // enabled only while the server is free
        bool releases = false; // enabled only for the current holder
    };

    std::string name;
    std::uint32_t states = 0; // local states 0..states-1, 0 is initial
    std::vector<Transition> transitions;
    bool uses_server = false;
};

// Plain cost loop through |costs| states: 0 -> 1 -> ... -> 0.
Scenario loop_scenario(const std::vector<std::int64_t>& costs);

// Three-state worker (think, submit, collect), server-free. The full loop
// costs (1, 2, 3) and a free abort edge submit->think gives each client a
// cheap short cycle, so minimum (1/2) and maximum (2) cycle means differ.
Scenario worker_scenario();

// Four-state client (think, want, use, done) around one shared server. The
// service loop costs (1, 2, 5, 1) with the acquire on want->use and the
// release on done->think; a free balk edge want->think adds a cheap short
// cycle. Minimum mean 1/2, maximum mean 9/4.
Scenario server_scenario();

struct GeneratedModel {
    Graph graph;
    std::uint32_t clients = 0;
    Scenario scenario;
    std::uint64_t states = 0; // reachable composite states (== graph.n)
};

inline constexpr std::uint64_t kMaxModelStates = 5'000'000;

// Explores the reachable composite state space. Throws std::length_error
// when it exceeds kMaxModelStates and std::invalid_argument on scenarios
// that cannot be packed or that reference out-of-range states.
GeneratedModel generate_model(const Scenario& sc, std::uint32_t clients);

// Comment lines describing a generated model (template, clients, sizes,
// objective), ready for write_edge_list.
std::vector<std::string> model_comments(const GeneratedModel& m);

} // namespace ocm
