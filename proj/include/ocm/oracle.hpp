// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference answers for testing, by brute force.
//
// enumerate_cycle_means lists every simple cycle (edge-distinct, so parallel
// edges yield distinct cycles) by a DFS that roots each cycle at its smallest
// vertex. Exponential; refuses graphs with more than 14 vertices.
//
// dp_min_cycle_mean runs the O(n*m) walk-length dynamic program over
// best-weight k-edge walks (all vertices as free starting points, which is
// the super-source formulation) and extracts the minimum cycle mean from the
// usual max-over-prefix-lengths expression. Exact on integer weights.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ocm/graph.hpp"
#include "ocm/rational.hpp"

namespace ocm {

struct CycleInfo {
    std::vector<EdgeId> edges; // in cycle order, starting at the smallest vertex
    std::uint32_t length = 0;
    double weight = 0.0;
    double mean = 0.0;
    Rational mean_exact; // meaningful only when the graph is integer-exact
};

struct EnumerationResult {
    std::vector<CycleInfo> cycles;
    bool exact = false;

    bool has_cycle() const { return !cycles.empty(); }
    // Smallest mean; call only when has_cycle().
    Rational min_mean_exact() const {
        Rational best = cycles.front().mean_exact;
        for (const CycleInfo& c : cycles)
            if (c.mean_exact < best)
                best = c.mean_exact;
        return best;
    }
    double min_mean() const {
        double best = cycles.front().mean;
        for (const CycleInfo& c : cycles)
            best = std::min(best, c.mean);
        return best;
    }
};

struct DpResult {
    bool has_cycle = false;
    bool exact = false;
    Rational mean_exact;
    double mean = 0.0;
};

inline EnumerationResult enumerate_cycle_means(const Graph& g) {
    if (g.n > 14)
        throw std::invalid_argument("cycle enumeration refuses graphs with more than 14 vertices");

    EnumerationResult out;
    out.exact = g.integer_exact;
    std::vector<char> on_path(g.n, 0);
    std::vector<EdgeId> path;

    // Cycles rooted at their smallest vertex s; the DFS may only visit
    // vertices greater than s and may close back to s.
    for (Vertex s = 0; s < g.n; ++s) {
        struct Frame {
            Vertex v;
            EdgeId next;
        };
        std::vector<Frame> stack;
        stack.push_back({s, g.out_begin(s)});
        on_path[s] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next == g.out_end(f.v)) {
                on_path[f.v] = 0;
                if (!path.empty())
                    path.pop_back();
                stack.pop_back();
                continue;
            }
            const EdgeId e = f.next++;
            const Vertex t = g.fwd_target[e];
            if (t == s) {
                CycleInfo c;
                c.edges = path;
                c.edges.push_back(e);
                c.length = static_cast<std::uint32_t>(c.edges.size());
                double w = 0.0;
                for (EdgeId ce : c.edges)
                    w += g.fwd_weight[ce];
                c.weight = w;
                c.mean = w / c.length;
                if (out.exact) {
                    std::int64_t wi = 0;
                    for (EdgeId ce : c.edges)
                        wi += g.weight_int(ce);
                    c.mean_exact = Rational(wi, c.length);
                }
                out.cycles.push_back(std::move(c));
            } else if (t > s && !on_path[t]) {
                on_path[t] = 1;
                path.push_back(e);
                stack.push_back({t, g.out_begin(t)});
            }
        }
        on_path[s] = 0;
    }
    return out;
}

namespace detail {

template <class W> struct DpLimits;
template <> struct DpLimits<std::int64_t> {
    static constexpr std::int64_t inf() { return std::numeric_limits<std::int64_t>::max(); }
};
template <> struct DpLimits<double> {
    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
};

// Best-weight k-edge walks for k = 0..n, any starting vertex. Returns the
// (n+1) x n table flattened row-major.
template <class W, class WeightFn>
std::vector<W> walk_table(const Graph& g, WeightFn wf) {
    const std::size_t n = g.n;
    const W inf = DpLimits<W>::inf();
    std::vector<W> table((n + 1) * n, inf);
    for (std::size_t v = 0; v < n; ++v)
        table[v] = W(0);
    for (std::size_t k = 1; k <= n; ++k) {
        const W* prev = &table[(k - 1) * n];
        W* row = &table[k * n];
        for (Vertex v = 0; v < g.n; ++v) {
            W best = inf;
            for (EdgeId s = g.in_begin(v); s != g.in_end(v); ++s) {
                const W pw = prev[g.bwd_source[s]];
                if (pw == inf)
                    continue;
                const W cand = pw + wf(g.bwd_fwd_edge[s]);
                if (cand < best)
                    best = cand;
            }
            row[v] = best;
        }
    }
    return table;
}

} // namespace detail

inline DpResult dp_min_cycle_mean(const Graph& g) {
    if (g.n > 2000)
        throw std::invalid_argument("dp oracle refuses graphs with more than 2000 vertices");
    DpResult out;
    out.exact = g.integer_exact;
    if (g.n == 0)
        return out;
    const std::size_t n = g.n;

    if (out.exact) {
        auto table = detail::walk_table<std::int64_t>(
            g, [&](EdgeId e) { return g.weight_int(e); });
        const std::int64_t inf = detail::DpLimits<std::int64_t>::inf();
        const std::int64_t* last = &table[n * n];
        bool found = false;
        Rational best;
        for (Vertex v = 0; v < g.n; ++v) {
            if (last[v] == inf)
                continue;
            bool any = false;
            Rational vmax;
            for (std::size_t j = 0; j < n; ++j) {
                const std::int64_t ej = table[j * n + v];
                if (ej == inf)
                    continue;
                Rational cand(last[v] - ej, static_cast<std::int64_t>(n - j));
                if (!any || vmax < cand) {
                    vmax = cand;
                    any = true;
                }
            }
            if (any && (!found || vmax < best)) {
                best = vmax;
                found = true;
            }
        }
        out.has_cycle = found;
        if (found) {
            out.mean_exact = best;
            out.mean = best.to_double();
        }
        return out;
    }

    auto table = detail::walk_table<double>(g, [&](EdgeId e) { return g.fwd_weight[e]; });
    const double inf = detail::DpLimits<double>::inf();
    const double* last = &table[n * n];
    bool found = false;
    double best = inf;
    for (Vertex v = 0; v < g.n; ++v) {
        if (last[v] == inf)
            continue;
        double vmax = -inf;
        bool any = false;
        for (std::size_t j = 0; j < n; ++j) {
            const double ej = table[j * n + v];
            if (ej == inf)
                continue;
            const double cand = (last[v] - ej) / static_cast<double>(n - j);
            if (!any || cand > vmax) {
                vmax = cand;
                any = true;
            }
        }
        if (any && (!found || vmax < best)) {
            best = vmax;
            found = true;
        }
    }
    out.has_cycle = found;
    if (found)
        out.mean = best;
    return out;
}

} // namespace ocm
