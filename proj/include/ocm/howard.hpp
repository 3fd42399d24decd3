// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Sequential policy iteration for the minimum cycle mean.
//
// Each round: one improvement pass re-picks out-edges against the current
// lambda (keeping the incumbent on ties, first-smallest edge id when
// replacing); if anything changed, the policy graph's cycles are collected,
// the least (mean, anchor) cycle becomes the new lambda, every other
// component is re-pointed toward the kept one layer by layer, and values are
// re-propagated backward from the kept cycle's anchor. Terminates when an
// improvement pass changes nothing; lambda is then the optimal cycle mean of
// the (region of the) graph, which must be strongly connected with at least
// one cycle.
//
// All tie-breaking is by smallest edge / vertex id so that runs are
// reproducible and the data-parallel solver can match this one move for
// move.

#include <cassert>
#include <stdexcept>
#include <vector>

#include "ocm/graph.hpp"
#include "ocm/policy.hpp"

namespace ocm {

template <class M> struct HowardState {
    PolicyGraph pg;
    ValuePair<M> vals;
    typename M::Lambda lambda = M::zero_lambda();
    std::uint32_t parity = 0; // plane read by the next improvement pass

    void init(Vertex n) {
        pg.init(n);
        vals.init(n);
        lambda = M::zero_lambda();
        parity = 0;
    }
};

template <class M> struct HowardIterTrace {
    typename M::Lambda lambda;
    std::vector<EdgeId> succ_edge;
    std::vector<typename M::Value> values; // plane just written by propagation
};
template <class M> using HowardTrace = std::vector<HowardIterTrace<M>>;

template <class M> struct HowardResult {
    typename M::Lambda lambda{};
    CycleRecord<M> cycle;
    std::vector<Vertex> cycle_vertices;
    std::uint32_t outer_iterations = 0;   // improvement passes that changed the policy
    std::uint32_t improvement_passes = 0; // including the final quiet pass
};

// One improvement pass. Reads plane `parity`, writes plane `parity^1`,
// updates succ_edge where strictly better. Returns whether any edge changed.
template <class M>
bool improve_policy(const Graph& g, HowardState<M>& st, const RegionView& view = {}) {
    const auto& read = st.vals.plane[st.parity];
    auto& write = st.vals.plane[st.parity ^ 1];
    bool improved = false;

    for (Vertex v = 0; v < g.n; ++v) {
        if (!view.contains(v))
            continue;
        typename M::Value best{};
        EdgeId best_edge = kNoEdge;
        for (EdgeId e = g.out_begin(v); e != g.out_end(v); ++e) {
            const Vertex t = g.fwd_target[e];
            if (!view.contains(t))
                continue;
            const typename M::Value cand = M::extend(read[t], M::weight(g, e), st.lambda);
            if (best_edge == kNoEdge || M::compare(cand, best, st.lambda) < 0) {
                best = cand;
                best_edge = e;
            }
        }
        if (best_edge == kNoEdge)
            throw std::logic_error("improve_policy: vertex " + std::to_string(v) +
                                   " has no successor inside its region");
        write[v] = best;
        const EdgeId cur = st.pg.succ_edge[v];
        if (cur == kNoEdge) {
            st.pg.succ_edge[v] = best_edge;
            improved = true;
        } else {
            const typename M::Value cur_cand =
                M::extend(read[g.fwd_target[cur]], M::weight(g, cur), st.lambda);
            if (M::strictly_better(best, cur_cand, st.lambda)) {
                st.pg.succ_edge[v] = best_edge;
                improved = true;
            }
        }
    }
    return improved;
}

// Collects one cycle record per weakly connected policy component. Anchors
// are the smallest vertex of each cycle; records come out sorted by anchor.
template <class M>
std::vector<CycleRecord<M>> find_policy_cycles(const Graph& g, const PolicyGraph& pg,
                                               const RegionView& view = {}) {
    std::vector<CycleRecord<M>> records;
    std::vector<std::uint32_t> color(g.n, 0); // 0 unvisited, 1 settled, v+2 in walk v
    for (Vertex s = 0; s < g.n; ++s) {
        if (!view.contains(s) || color[s] != 0)
            continue;
        const std::uint32_t walk_mark = s + 2;
        Vertex u = s;
        while (color[u] == 0) {
            color[u] = walk_mark;
            assert(pg.succ_edge[u] != kNoEdge);
            u = g.fwd_target[pg.succ_edge[u]];
        }
        if (color[u] == walk_mark) {
            // New cycle; u lies on it. Find the anchor first, then accumulate
            // starting from it, so the float sum is taken in the same order
            // the data-parallel solver uses.
            CycleRecord<M> rec;
            rec.anchor = u;
            for (Vertex w = g.fwd_target[pg.succ_edge[u]]; w != u;
                 w = g.fwd_target[pg.succ_edge[w]])
                rec.anchor = std::min(rec.anchor, w);
            rec.weight = M::zero_wsum();
            Vertex w = rec.anchor;
            do {
                const EdgeId e = pg.succ_edge[w];
                rec.weight += M::weight(g, e);
                ++rec.length;
                w = g.fwd_target[e];
            } while (w != rec.anchor);
            rec.mean = M::cycle_mean(rec.weight, rec.length);
            records.push_back(rec);
        }
        // Settle the walked path.
        for (Vertex w = s; color[w] == walk_mark; w = g.fwd_target[pg.succ_edge[w]])
            color[w] = 1;
    }
    return records;
}

template <class M>
const CycleRecord<M>& select_min_cycle(const std::vector<CycleRecord<M>>& records) {
    if (records.empty())
        throw std::logic_error("select_min_cycle: no cycle records");
    const CycleRecord<M>* best = &records.front();
    for (const CycleRecord<M>& r : records)
        if (record_less(r, *best))
            best = &r;
    return *best;
}

// Re-points every vertex outside the kept cycle's component toward it.
// Phase 1 marks the kept component (the cycle plus everything whose policy
// path already reaches it) and leaves its edges alone. Phase 2 attaches the
// rest in breadth layers: in each layer, an unattached vertex picks its
// smallest out-edge whose head was attached in an earlier layer. The layer
// discipline (never attach through a same-layer vertex) is what the
// data-parallel variant reproduces exactly.
template <class M>
void rebuild_policy(const Graph& g, PolicyGraph& pg, const CycleRecord<M>& min_cycle,
                    const RegionView& view = {}) {
    std::vector<char> connected(g.n, 0);
    std::vector<Vertex> queue;

    // Kept cycle.
    {
        Vertex u = min_cycle.anchor;
        do {
            connected[u] = 1;
            pg.flags[u] |= kOnMinComponent;
            queue.push_back(u);
            u = g.fwd_target[pg.succ_edge[u]];
        } while (u != min_cycle.anchor);
    }
    // Backward closure along policy edges: these already reach the cycle.
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const Vertex v = queue[qi];
        for (EdgeId s = g.in_begin(v); s != g.in_end(v); ++s) {
            const Vertex u = g.bwd_source[s];
            if (!view.contains(u) || connected[u])
                continue;
            if (pg.succ_edge[u] == g.bwd_fwd_edge[s]) {
                connected[u] = 1;
                pg.flags[u] |= kOnMinComponent;
                queue.push_back(u);
            }
        }
    }

    // Layered re-attachment of everything else.
    std::size_t remaining = 0;
    for (Vertex v = 0; v < g.n; ++v)
        if (view.contains(v) && !connected[v])
            ++remaining;
    std::vector<std::pair<Vertex, EdgeId>> layer;
    while (remaining > 0) {
        layer.clear();
        for (Vertex v = 0; v < g.n; ++v) {
            if (!view.contains(v) || connected[v])
                continue;
            for (EdgeId e = g.out_begin(v); e != g.out_end(v); ++e) {
                const Vertex t = g.fwd_target[e];
                if (view.contains(t) && connected[t]) {
                    layer.push_back({v, e}); // smallest such edge id
                    break;
                }
            }
        }
        if (layer.empty())
            throw std::logic_error("rebuild_policy: region is not strongly connected");
        for (const auto& [v, e] : layer) {
            pg.succ_edge[v] = e;
            connected[v] = 1;
        }
        remaining -= layer.size();
    }
}

// Backward value propagation from the kept cycle's anchor, whose value is
// fixed to zero. Every other vertex gets value(succ) + w - lambda along its
// (unique) policy edge; the policy graph is a tree into the single cycle, so
// each vertex is written exactly once.
template <class M>
void propagate_values(const Graph& g, HowardState<M>& st, Vertex anchor,
                      const RegionView& view = {}) {
    auto& plane = st.vals.plane[st.parity];
    plane[anchor] = M::zero_value();
    std::vector<Vertex> queue{anchor};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const Vertex v = queue[qi];
        for (EdgeId s = g.in_begin(v); s != g.in_end(v); ++s) {
            const Vertex u = g.bwd_source[s];
            if (!view.contains(u) || u == anchor)
                continue;
            const EdgeId e = g.bwd_fwd_edge[s];
            if (st.pg.succ_edge[u] != e)
                continue;
            plane[u] = M::extend(plane[v], M::weight(g, e), st.lambda);
            queue.push_back(u);
        }
    }
}

// Walks the kept cycle from its anchor; the reported vertex order follows
// policy edges.
template <class M>
std::vector<Vertex> cycle_vertices_of(const Graph& g, const PolicyGraph& pg,
                                      const CycleRecord<M>& rec) {
    std::vector<Vertex> out;
    Vertex u = rec.anchor;
    do {
        out.push_back(u);
        u = g.fwd_target[pg.succ_edge[u]];
    } while (u != rec.anchor);
    return out;
}

template <class M>
HowardResult<M> howard_solve(const Graph& g, const RegionView& view = {},
                             HowardTrace<M>* trace = nullptr) {
    HowardResult<M> out;
    HowardState<M> st;
    st.init(g.n);

    for (;;) {
        const bool improved = improve_policy(g, st, view);
        ++out.improvement_passes;
        if (!improved)
            break;
        ++out.outer_iterations;
        st.parity ^= 1;

        const auto records = find_policy_cycles<M>(g, st.pg, view);
        const CycleRecord<M> c = select_min_cycle(records);
        if constexpr (M::exact) {
            // Lambda never increases (each accepted cycle is at least as good).
            assert(out.outer_iterations == 1 || !M::mean_less(st.lambda, c.mean));
        }
        st.lambda = c.mean;
        for (Vertex v = 0; v < g.n; ++v)
            if (view.contains(v))
                st.pg.flags[v] &= static_cast<std::uint8_t>(~kOnMinComponent);
        rebuild_policy(g, st.pg, c, view);
        propagate_values(g, st, c.anchor, view);

        out.cycle = c;
        out.cycle_vertices = cycle_vertices_of(g, st.pg, c);
        if (trace)
            trace->push_back({c.mean, st.pg.succ_edge, st.vals.plane[st.parity]});
    }

    if (out.outer_iterations == 0)
        throw std::logic_error("howard_solve: first improvement pass made no change");
    out.lambda = st.lambda;
    return out;
}

} // namespace ocm
