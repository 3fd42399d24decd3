// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Feasibility scan for the parametric weight w'(e) = w(e) - lambda.
//
// A value lambda is feasible iff the graph has no cycle of negative w'
// weight, which happens iff lambda <= optimal (minimum) cycle mean. The scan
// is the pass-synchronous label-correcting method: potentials start at zero
// with every vertex labelled found (zero initialization is exactly the
// virtual-source-to-all formulation, so every vertex is a legitimate start),
// each pass scans the vertices found during the previous pass, and a frontier
// that survives n full passes proves a negative cycle, whose witness is
// recovered by walking parent links until a vertex repeats.
//
// Exact integer variant: for lambda = p/q (q > 0) it scans with scaled
// weights w(e)*q - p, which preserves every comparison and sign.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

#include "ocm/graph.hpp"
#include "ocm/rational.hpp"

namespace ocm {

enum class VertexLabel : std::uint8_t { Unreached, Found, Scanned };

enum class Feasibility { Feasible, NegativeCycle };

template <class P> struct ScanState {
    std::vector<P> potential;
    std::vector<EdgeId> parent;       // edge that last improved the vertex
    std::vector<VertexLabel> label;

    void init_all_found(Vertex n) {
        potential.assign(n, P(0));
        parent.assign(n, kNoEdge);
        label.assign(n, VertexLabel::Found);
    }
};

struct SpfResult {
    Feasibility verdict = Feasibility::Feasible;
    std::uint32_t passes = 0;          // scan passes that actually ran
    std::vector<EdgeId> cycle_edges;   // witness, in cycle order (negative verdict only)
    std::vector<Vertex> cycle_vertices;
};

struct ScanOptions {
    enum class Order { Ascending, Descending, Shuffled };
    Order order = Order::Ascending;
    std::uint64_t seed = 1;
};

// Relaxes every out-edge of u and labels u scanned. Improved targets become
// found. Returns whether any target improved. The scanned mark is set before
// relaxing so a self-loop improvement of u leaves u found for the next pass.
template <class P, class WeightFn>
bool scan_vertex(ScanState<P>& st, const Graph& g, const WeightFn& wf, Vertex u) {
    bool improved = false;
    st.label[u] = VertexLabel::Scanned;
    const P pu = st.potential[u];
    for (EdgeId e = g.out_begin(u); e != g.out_end(u); ++e) {
        const Vertex t = g.fwd_target[e];
        const P cand = pu + wf(e);
        if (cand < st.potential[t]) {
            st.potential[t] = cand;
            st.parent[t] = e;
            st.label[t] = VertexLabel::Found;
            improved = true;
        }
    }
    return improved;
}

namespace detail {

// Walks parent links from `start` until a vertex repeats; the loop part is a
// genuine cycle of the graph with negative parametric weight.
inline void extract_parent_cycle(const Graph& g, const std::vector<EdgeId>& parent, Vertex start,
                                 std::vector<EdgeId>& cycle_edges,
                                 std::vector<Vertex>& cycle_vertices) {
    std::vector<std::uint32_t> seen(g.n, 0);
    std::vector<Vertex> chain;
    Vertex v = start;
    while (seen[v] == 0) {
        seen[v] = static_cast<std::uint32_t>(chain.size()) + 1;
        chain.push_back(v);
        assert(parent[v] != kNoEdge);
        v = g.fwd_source[parent[v]];
    }
    // chain[seen[v]-1 ..] walked backward from the repeat point is the cycle.
    std::vector<Vertex> loop(chain.begin() + (seen[v] - 1), chain.end());
    std::reverse(loop.begin(), loop.end()); // forward edge order

    // Rotate so the smallest vertex leads (stable witness for tests).
    const auto minit = std::min_element(loop.begin(), loop.end());
    std::rotate(loop.begin(), minit, loop.end());

    cycle_vertices = loop;
    cycle_edges.clear();
    for (std::size_t i = 0; i < loop.size(); ++i)
        cycle_edges.push_back(parent[loop[(i + 1) % loop.size()]]);
}

template <class P, class WeightFn>
SpfResult spf_feasible_impl(const Graph& g, const WeightFn& wf, const ScanOptions& opt) {
    SpfResult out;
    if (g.n == 0)
        return out;

    ScanState<P> st;
    st.init_all_found(g.n);

    std::vector<Vertex> frontier(g.n);
    for (Vertex v = 0; v < g.n; ++v)
        frontier[v] = v;
    std::vector<Vertex> next;
    next.reserve(g.n);
    std::vector<char> queued(g.n, 0);

    std::mt19937_64 rng(opt.seed);
    auto arrange = [&](std::vector<Vertex>& f) {
        switch (opt.order) {
        case ScanOptions::Order::Ascending:
            break;
        case ScanOptions::Order::Descending:
            std::reverse(f.begin(), f.end());
            break;
        case ScanOptions::Order::Shuffled:
            std::shuffle(f.begin(), f.end(), rng);
            break;
        }
    };

    for (std::uint32_t pass = 1; pass <= g.n && !frontier.empty(); ++pass) {
        arrange(frontier);
        ++out.passes;
        next.clear();
        std::fill(queued.begin(), queued.end(), 0);
        for (Vertex u : frontier) {
            if (st.label[u] != VertexLabel::Found)
                continue;
            // Scanned before relaxing: a self-loop improvement of u must
            // leave u found, or the scan would quiesce past a negative
            // self-loop.
            st.label[u] = VertexLabel::Scanned;
            const P pu = st.potential[u];
            for (EdgeId e = g.out_begin(u); e != g.out_end(u); ++e) {
                const Vertex t = g.fwd_target[e];
                const P cand = pu + wf(e);
                if (cand < st.potential[t]) {
                    st.potential[t] = cand;
                    st.parent[t] = e;
                    st.label[t] = VertexLabel::Found;
                    if (!queued[t]) {
                        queued[t] = 1;
                        next.push_back(t);
                    }
                }
            }
        }
        frontier.swap(next);
    }

    if (!frontier.empty()) {
        out.verdict = Feasibility::NegativeCycle;
        // Deterministic anchor regardless of scan order.
        const Vertex start = *std::min_element(frontier.begin(), frontier.end());
        extract_parent_cycle(g, st.parent, start, out.cycle_edges, out.cycle_vertices);
    }
    return out;
}

} // namespace detail

inline SpfResult spf_feasible(const Graph& g, double lambda, const ScanOptions& opt = {}) {
    return detail::spf_feasible_impl<double>(
        g, [&](EdgeId e) { return g.fwd_weight[e] - lambda; }, opt);
}

// Exact scan; requires an integer-exact graph. Potentials are 128-bit so
// even n * |w| * den sums cannot wrap.
inline SpfResult spf_feasible_exact(const Graph& g, const Rational& lambda,
                                    const ScanOptions& opt = {}) {
    assert(g.integer_exact);
    const std::int64_t num = lambda.num;
    const std::int64_t den = lambda.den;
    return detail::spf_feasible_impl<__int128>(
        g,
        [&, num, den](EdgeId e) {
            return static_cast<__int128>(g.weight_int(e)) * den - num;
        },
        opt);
}

// Exact parametric cycle weight sign helper for witness checks: sum over the
// cycle of (w*den - num); negative iff the cycle mean is below lambda.
inline __int128 scaled_cycle_weight(const Graph& g, const std::vector<EdgeId>& cycle,
                                    const Rational& lambda) {
    __int128 s = 0;
    for (EdgeId e : cycle)
        s += static_cast<__int128>(g.weight_int(e)) * lambda.den - lambda.num;
    return s;
}

} // namespace ocm
