// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ocm/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ocm {

namespace {

// Integers up to 2^53 round-trip through double exactly.
constexpr double kExactIntLimit = 9007199254740992.0;

bool integral_weight(double w) {
    return std::floor(w) == w && std::fabs(w) < kExactIntLimit;
}

} // namespace

Graph build_graph(Vertex n, const std::vector<EdgeInput>& edges) {
    Graph g;
    g.n = n;
    g.m = static_cast<EdgeId>(edges.size());

    bool exact = true;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const EdgeInput& e = edges[i];
        if (e.u >= n || e.v >= n)
            throw std::invalid_argument("edge " + std::to_string(i) + " endpoint out of range");
        if (!std::isfinite(e.w))
            throw std::invalid_argument("edge " + std::to_string(i) + " has non-finite weight");
        exact = exact && integral_weight(e.w);
    }
    g.integer_exact = exact;

    // Stable counting sort by source: edge id = CSR position.
    g.fwd_index.assign(n + 1, 0);
    for (const EdgeInput& e : edges)
        ++g.fwd_index[e.u + 1];
    for (Vertex v = 0; v < n; ++v)
        g.fwd_index[v + 1] += g.fwd_index[v];

    g.fwd_target.resize(g.m);
    g.fwd_source.resize(g.m);
    g.fwd_weight.resize(g.m);
    {
        std::vector<EdgeId> cursor(g.fwd_index.begin(), g.fwd_index.end() - 1);
        for (const EdgeInput& e : edges) {
            const EdgeId id = cursor[e.u]++;
            g.fwd_source[id] = e.u;
            g.fwd_target[id] = e.v;
            g.fwd_weight[id] = e.w;
        }
    }

    // Backward CSR grouped by target, ascending forward edge id within each
    // group (stable pass over forward ids).
    g.bwd_index.assign(n + 1, 0);
    for (EdgeId e = 0; e < g.m; ++e)
        ++g.bwd_index[g.fwd_target[e] + 1];
    for (Vertex v = 0; v < n; ++v)
        g.bwd_index[v + 1] += g.bwd_index[v];
    g.bwd_source.resize(g.m);
    g.bwd_fwd_edge.resize(g.m);
    {
        std::vector<EdgeId> cursor(g.bwd_index.begin(), g.bwd_index.end() - 1);
        for (EdgeId e = 0; e < g.m; ++e) {
            const EdgeId slot = cursor[g.fwd_target[e]]++;
            g.bwd_source[slot] = g.fwd_source[e];
            g.bwd_fwd_edge[slot] = e;
        }
    }
    return g;
}

Graph transpose(const Graph& g) {
    std::vector<EdgeInput> rev;
    rev.reserve(g.m);
    // Emit in backward-slot order so the transposed edge ids follow the
    // original backward CSR layout.
    for (Vertex v = 0; v < g.n; ++v)
        for (EdgeId s = g.in_begin(v); s != g.in_end(v); ++s)
            rev.push_back({v, g.bwd_source[s], g.fwd_weight[g.bwd_fwd_edge[s]]});
    return build_graph(g.n, rev);
}

Graph negate_weights(const Graph& g) {
    Graph out = g;
    for (double& w : out.fwd_weight)
        w = -w;
    return out;
}

Graph augment_root(const Graph& g) {
    std::vector<EdgeInput> edges = g.edges();
    const Vertex root = g.n;
    for (Vertex v = 0; v < g.n; ++v)
        edges.push_back({root, v, 0.0});
    Graph out = build_graph(g.n + 1, edges);
    // The root group sits at the end of the CSR, so original ids survive.
    return out;
}

HamiltonianAugmented augment_hamiltonian(const Graph& g, double big_w) {
    if (g.n == 0)
        throw std::invalid_argument("cannot augment an empty graph");
    double max_abs = 0.0;
    for (double w : g.fwd_weight)
        max_abs = std::max(max_abs, std::fabs(w));
    if (big_w == 0.0)
        big_w = 2.0 * static_cast<double>(g.n) * (max_abs + 1.0) + 1.0;
    if (!std::isfinite(big_w) || big_w >= kExactIntLimit)
        throw std::overflow_error("hamiltonian weight too large to stay exact");

    std::vector<EdgeInput> edges = g.edges();
    for (Vertex v = 0; v < g.n; ++v)
        edges.push_back({v, (v + 1) % g.n, big_w});

    HamiltonianAugmented out;
    out.graph = build_graph(g.n, edges);
    out.big_w = big_w;
    out.no_cycle_above = max_abs;
    return out;
}

} // namespace ocm
