// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ocm/model_gen.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace ocm {

Scenario loop_scenario(const std::vector<std::int64_t>& costs) {
    if (costs.empty())
        throw std::invalid_argument("loop scenario needs at least one transition");
    Scenario sc;
    sc.name = "loop" + std::to_string(costs.size());
    sc.states = static_cast<std::uint32_t>(costs.size());
    for (std::uint32_t i = 0; i < sc.states; ++i)
        sc.transitions.push_back({i, (i + 1) % sc.states, costs[i], false, false});
    return sc;
}

Scenario worker_scenario() {
    Scenario sc;
    sc.name = "worker";
    sc.states = 3;
    sc.transitions = {
        {0, 1, 1, false, false}, // think -> submit
        {1, 0, 0, false, false}, // submit -> think, abort path
        {1, 2, 2, false, false}, // submit -> collect
        {2, 0, 3, false, false}, // collect -> think
    };
    return sc;
}

Scenario server_scenario() {
    Scenario sc;
    sc.name = "server";
    sc.states = 4;
    sc.uses_server = true;
    sc.transitions = {
        {0, 1, 1, false, false}, // think -> want
        {1, 0, 0, false, false}, // want -> think, balk path
        {1, 2, 2, true, false},  // want -> use, takes the server
        {2, 3, 5, false, false}, // use -> done, still holding
        {3, 0, 1, false, true},  // done -> think, frees the server
    };
    return sc;
}

namespace {

// Composite states are packed into 64 bits: one field per client plus an
// owner field when a server is present (owner 0 = free, i+1 = client i).
struct Packing {
    std::uint32_t client_bits = 0;
    std::uint32_t owner_bits = 0;
    std::uint32_t clients = 0;

    std::uint64_t client_mask() const { return (std::uint64_t(1) << client_bits) - 1; }

    std::uint32_t local(std::uint64_t s, std::uint32_t i) const {
        return static_cast<std::uint32_t>((s >> (i * client_bits)) & client_mask());
    }
    std::uint64_t with_local(std::uint64_t s, std::uint32_t i, std::uint32_t v) const {
        const std::uint64_t shift = std::uint64_t(i) * client_bits;
        return (s & ~(client_mask() << shift)) | (std::uint64_t(v) << shift);
    }
    std::uint32_t owner(std::uint64_t s) const {
        return static_cast<std::uint32_t>(s >> (clients * client_bits));
    }
    std::uint64_t with_owner(std::uint64_t s, std::uint32_t o) const {
        const std::uint64_t shift = std::uint64_t(clients) * client_bits;
        const std::uint64_t mask = ((std::uint64_t(1) << owner_bits) - 1) << shift;
        return (s & ~mask) | (std::uint64_t(o) << shift);
    }
};

std::uint32_t bits_for(std::uint64_t values) {
    std::uint32_t b = 0;
    while ((std::uint64_t(1) << b) < values)
        ++b;
    return b;
}

} // namespace

GeneratedModel generate_model(const Scenario& sc, std::uint32_t clients) {
    if (sc.states == 0 || clients == 0)
        throw std::invalid_argument("model needs at least one state and one client");
    for (const auto& t : sc.transitions) {
        if (t.from >= sc.states || t.to >= sc.states)
            throw std::invalid_argument("scenario transition references a missing state");
        if ((t.acquires || t.releases) && !sc.uses_server)
            throw std::invalid_argument("server transition in a server-free scenario");
    }

    Packing pk;
    pk.clients = clients;
    pk.client_bits = std::max(bits_for(sc.states), 1u);
    pk.owner_bits = sc.uses_server ? bits_for(std::uint64_t(clients) + 1) : 0;
    if (std::uint64_t(pk.client_bits) * clients + pk.owner_bits > 64)
        throw std::invalid_argument("composite state does not fit in 64 bits");

    std::unordered_map<std::uint64_t, Vertex> id;
    std::deque<std::uint64_t> queue;
    std::vector<EdgeInput> edges;

    const std::uint64_t initial = 0; // all clients in state 0, server free
    id.emplace(initial, 0);
    queue.push_back(initial);

    auto intern = [&](std::uint64_t s) {
        auto [it, fresh] = id.emplace(s, static_cast<Vertex>(id.size()));
        if (fresh) {
            if (id.size() > kMaxModelStates)
                throw std::length_error("state space exceeds " +
                                        std::to_string(kMaxModelStates) + " states");
            queue.push_back(s);
        }
        return it->second;
    };

    while (!queue.empty()) {
        const std::uint64_t s = queue.front();
        queue.pop_front();
        const Vertex u = id.at(s);
        for (std::uint32_t i = 0; i < clients; ++i) {
            const std::uint32_t loc = pk.local(s, i);
            for (const auto& t : sc.transitions) {
                if (t.from != loc)
                    continue;
                if (t.acquires && pk.owner(s) != 0)
                    continue;
                if (t.releases && pk.owner(s) != i + 1)
                    continue;
                std::uint64_t ns = pk.with_local(s, i, t.to);
                if (t.acquires)
                    ns = pk.with_owner(ns, i + 1);
                if (t.releases)
                    ns = pk.with_owner(ns, 0);
                edges.push_back({u, intern(ns), static_cast<double>(t.cost)});
            }
        }
    }

    GeneratedModel out;
    out.clients = clients;
    out.scenario = sc;
    out.states = id.size();
    out.graph = build_graph(static_cast<Vertex>(id.size()), edges);
    return out;
}

std::vector<std::string> model_comments(const GeneratedModel& m) {
    return {
        "model " + m.scenario.name + " clients=" + std::to_string(m.clients),
        "states=" + std::to_string(m.states) + " edges=" + std::to_string(m.graph.m),
        "objective: maximize (worst sustained cost rate)",
    };
}

} // namespace ocm
