// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Two independent reference solvers used to cross-check policy iteration.
//
// lawler_solve brackets the optimum: feasibility scans at the interval
// midpoint either certify lambda <= mu* (feasible) or produce a cycle whose
// mean becomes the new upper bound, so [lo, hi] keeps straddling mu* and at
// least halves every probe. Bisection runs in doubles; on integer-weight
// graphs a finishing loop of exact probes at (best mean - 1/(n(n+1)))
// certifies the held cycle is exactly critical, since two distinct simple
// cycle means can never lie closer than 1/(n(n-1)).
//
// tree_solve sweeps lambda upward while maintaining the shortest-path tree
// of the root-augmented graph under w - lambda. Each vertex distance is the
// line a - b*lambda (a = path weight, b = path length), so the first lambda
// at which a non-tree edge (u,v) catches up to v's distance is
// (a_u + w - a_v) / (b_u + 1 - b_v), defined when the denominator is
// positive. Events fire in threshold order through a heap with lazy
// revalidation; a swap whose tail lies inside the head's subtree closes a
// cycle of reduced weight zero, and that lambda is mu* exactly. If the heap
// drains first, the graph is acyclic.
//
// Both are single-threaded on purpose: they are oracles, not parallel
// targets.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ocm/graph.hpp"
#include "ocm/policy.hpp"
#include "ocm/rational.hpp"
#include "ocm/spf.hpp"

namespace ocm {

struct LawlerResult {
    bool has_cycle = false;
    double lambda_lo = 0.0; // final bracket, lambda_lo <= mu* <= lambda_hi
    double lambda_hi = 0.0;
    double mean = 0.0;          // mean of the held cycle (= lambda_hi)
    Rational mean_exact{};      // exact mean, integer-weight graphs only
    bool exact = false;         // mean_exact is authoritative (and critical)
    std::vector<EdgeId> cycle_edges;
    std::vector<Vertex> cycle_vertices;
    std::uint32_t iterations = 0;   // bisection probes
    std::uint32_t exact_probes = 0; // finishing probes (integer mode)
};

namespace detail {

inline double lawler_cycle_mean(const Graph& g, const std::vector<EdgeId>& cycle) {
    double s = 0.0;
    for (EdgeId e : cycle)
        s += g.fwd_weight[e];
    return s / static_cast<double>(cycle.size());
}

inline Rational lawler_cycle_mean_exact(const Graph& g, const std::vector<EdgeId>& cycle) {
    std::int64_t s = 0;
    for (EdgeId e : cycle)
        s += g.weight_int(e);
    return Rational(s, static_cast<std::int64_t>(cycle.size()));
}

} // namespace detail

inline LawlerResult lawler_solve(const Graph& g, double epsilon, const ScanOptions& opt = {}) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("lawler_solve: epsilon must be positive");
    LawlerResult out;
    if (g.n == 0 || g.m == 0)
        return out;

    double lo = g.fwd_weight[0], hi = g.fwd_weight[0];
    for (EdgeId e = 1; e < g.m; ++e) {
        lo = std::min(lo, g.fwd_weight[e]);
        hi = std::max(hi, g.fwd_weight[e]);
    }

    auto adopt = [&](const SpfResult& r) {
        out.has_cycle = true;
        out.cycle_edges = r.cycle_edges;
        out.cycle_vertices = r.cycle_vertices;
        out.mean = detail::lawler_cycle_mean(g, r.cycle_edges);
        if (g.integer_exact)
            out.mean_exact = detail::lawler_cycle_mean_exact(g, r.cycle_edges);
    };

    // Bisection. Every cycle mean lies in [min w, max w], so the initial
    // interval brackets mu* whenever a cycle exists at all.
    while (hi - lo >= epsilon) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi)
            break; // interval no longer splittable in doubles
        ++out.iterations;
        const SpfResult r = spf_feasible(g, mid, opt);
        if (r.verdict == Feasibility::NegativeCycle) {
            adopt(r);
            hi = std::min(mid, out.mean); // witness mean < mid in exact terms
        } else {
            lo = mid;
        }
    }

    // Exact finishing requires rationals with denominator n*(n+1) and
    // numerators around n*(n+1)*|cycle weight|; bail out to the plain double
    // bracket when that cannot fit in 64 bits.
    std::int64_t wmax_abs = 0, wmax = 0;
    bool exact_fits = false;
    if (g.integer_exact) {
        wmax = g.weight_int(0);
        for (EdgeId e = 0; e < g.m; ++e) {
            const std::int64_t w = g.weight_int(e);
            wmax = std::max(wmax, w);
            wmax_abs = std::max(wmax_abs, w < 0 ? -w : w);
        }
        const __int128 worst = static_cast<__int128>(g.n) * (g.n + 1) *
                               (static_cast<__int128>(g.n) * (wmax_abs + 1));
        exact_fits = worst < std::numeric_limits<std::int64_t>::max() / 4;
    }

    if (exact_fits) {
        // Exact finishing. Probe strictly below the held mean by less than
        // the minimal spacing of distinct cycle means (two simple cycle
        // means with lengths <= n can differ by no less than 1/(n(n-1)));
        // a feasible probe certifies the held cycle is critical, a witness
        // replaces it with a strictly better cycle. Starts above every
        // weight when bisection never saw a cycle, which also settles
        // acyclic graphs.
        const std::int64_t n = g.n;
        const Rational spacing(1, n * (n + 1));
        for (;;) {
            const Rational probe =
                out.has_cycle ? out.mean_exact - spacing : Rational::integer(wmax + 1);
            ++out.exact_probes;
            const SpfResult r = spf_feasible_exact(g, probe, opt);
            if (r.verdict == Feasibility::Feasible)
                break;
            adopt(r);
        }
        if (out.has_cycle) {
            out.exact = true;
            out.mean = out.mean_exact.to_double();
            hi = out.mean;
            lo = std::min(lo, hi);
        } else {
            return out; // acyclic, certified exactly
        }
    } else if (!out.has_cycle) {
        // One probe above every weight decides cycle vs none: with no
        // witness adopted, hi still holds the original maximum weight.
        const SpfResult r = spf_feasible(g, hi + 1.0, opt);
        if (r.verdict == Feasibility::Feasible)
            return out;
        adopt(r);
        hi = out.mean;
        lo = std::min(lo, hi);
    }

    out.lambda_lo = lo;
    out.lambda_hi = hi;
    return out;
}

template <class M> struct TreeResult {
    bool has_cycle = false;
    typename M::Lambda lambda{}; // mu*, exact in ExactMode
    std::vector<EdgeId> cycle_edges;
    std::vector<Vertex> cycle_vertices;
    std::uint32_t events = 0; // accepted threshold events, cycle close included
};

// Parametric shortest-path sweep on the root-augmented graph. The input may
// be any digraph; augmentation happens inside.
template <class M> TreeResult<M> tree_solve(const Graph& g) {
    TreeResult<M> out;
    if (g.n == 0)
        return out;
    const Graph ag = augment_root(g);
    const Vertex root = g.n;

    // Tree state: parent edge, distance line a - b*lambda, children lists.
    std::vector<EdgeId> parent(ag.n, kNoEdge);
    std::vector<typename M::WSum> a(ag.n, M::zero_wsum());
    std::vector<std::uint32_t> b(ag.n, 0);
    std::vector<std::vector<Vertex>> children(ag.n);
    for (Vertex v = 0; v < g.n; ++v) {
        parent[v] = ag.out_begin(root) + v; // root edges appended in vertex order
        a[v] = M::zero_wsum();
        b[v] = 1;
        children[root].push_back(v);
    }

    struct Event {
        typename M::Lambda key;
        EdgeId edge;
    };
    auto later = [](const Event& x, const Event& y) {
        if (M::mean_less(y.key, x.key))
            return true;
        if (M::mean_less(x.key, y.key))
            return false;
        return x.edge > y.edge;
    };
    std::priority_queue<Event, std::vector<Event>, decltype(later)> queue(later);

    // Threshold of a non-tree edge, if the edge can ever catch up.
    auto threshold = [&](EdgeId e, typename M::Lambda& key) {
        const Vertex u = ag.fwd_source[e], v = ag.fwd_target[e];
        const std::int64_t coef =
            static_cast<std::int64_t>(b[u]) + 1 - static_cast<std::int64_t>(b[v]);
        if (coef <= 0)
            return false;
        const typename M::WSum rise = a[u] + M::weight(ag, e) - a[v];
        key = M::cycle_mean(rise, static_cast<std::uint32_t>(coef));
        return true;
    };
    auto push_edge = [&](EdgeId e) {
        if (parent[ag.fwd_target[e]] == e)
            return;
        typename M::Lambda key{};
        if (threshold(e, key))
            queue.push({key, e});
    };
    for (EdgeId e = 0; e < g.m; ++e) // original edges; root edges start in-tree
        push_edge(e);

    typename M::Lambda lambda = M::zero_lambda();
    bool started = false;
    std::vector<Vertex> subtree;

    while (!queue.empty()) {
        const Event ev = queue.top();
        queue.pop();
        const EdgeId e = ev.edge;
        const Vertex u = ag.fwd_source[e], v = ag.fwd_target[e];

        typename M::Lambda cur{};
        if (!threshold(e, cur))
            continue; // stale: edge can no longer fire (or is a tree edge)
        if (M::mean_less(cur, ev.key) || M::mean_less(ev.key, cur))
            continue; // stale: a fresher entry carries the new threshold
        if constexpr (M::exact) {
            if (started && M::mean_less(cur, lambda))
                throw std::logic_error("tree_solve: lambda decreased");
        }
        lambda = started && M::mean_less(cur, lambda) ? lambda : cur;
        started = true;
        ++out.events;

        // Ancestor walk: if u sits in v's subtree, edge e closes a cycle of
        // reduced weight zero at this lambda, so lambda is mu*.
        bool closes = u == v;
        for (Vertex x = u; !closes && x != root;) {
            const Vertex p = ag.fwd_source[parent[x]];
            if (p == v)
                closes = true;
            x = p;
        }
        if (closes) {
            out.has_cycle = true;
            out.lambda = lambda;
            std::vector<EdgeId> path; // v -> ... -> u tree edges, collected upward
            for (Vertex x = u; x != v; x = ag.fwd_source[parent[x]])
                path.push_back(parent[x]);
            std::reverse(path.begin(), path.end());
            path.push_back(e);
            // Rotate so the smallest vertex leads (stable for tests).
            std::vector<Vertex> verts;
            verts.reserve(path.size());
            Vertex x = v;
            for (EdgeId pe : path) {
                verts.push_back(x);
                x = ag.fwd_target[pe];
            }
            const std::size_t off =
                std::min_element(verts.begin(), verts.end()) - verts.begin();
            std::rotate(verts.begin(), verts.begin() + off, verts.end());
            std::rotate(path.begin(), path.begin() + off, path.end());
            out.cycle_vertices = verts;
            out.cycle_edges = path;
            if constexpr (M::exact) {
                typename M::WSum w = M::zero_wsum();
                for (EdgeId ce : path)
                    w += M::weight(ag, ce);
                if (!(M::cycle_mean(w, static_cast<std::uint32_t>(path.size())) == lambda))
                    throw std::logic_error("tree_solve: closing cycle mean is not lambda");
            }
            return out;
        }

        // Reparent v onto e and refresh its subtree's lines; every edge
        // touching the subtree gets a fresh heap entry.
        {
            auto& sib = children[ag.fwd_source[parent[v]]];
            sib.erase(std::find(sib.begin(), sib.end(), v));
        }
        parent[v] = e;
        children[u].push_back(v);
        subtree.clear();
        subtree.push_back(v);
        for (std::size_t i = 0; i < subtree.size(); ++i) {
            const Vertex x = subtree[i];
            const EdgeId pe = parent[x];
            a[x] = a[ag.fwd_source[pe]] + M::weight(ag, pe);
            b[x] = b[ag.fwd_source[pe]] + 1;
            for (Vertex c : children[x])
                subtree.push_back(c);
        }
        for (Vertex x : subtree) {
            for (EdgeId oe = g.out_begin(x); oe != g.out_end(x); ++oe)
                push_edge(oe);
            for (EdgeId s = g.in_begin(x); s != g.in_end(x); ++s)
                push_edge(g.bwd_fwd_edge[s]);
        }
    }

    return out; // heap drained with no closing event: acyclic
}

} // namespace ocm
