// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Policy iteration as bulk-synchronous kernels, plus region-concurrent
// execution over an SCC partition.
//
// One host iteration launches, in order: the improvement pass (one kernel
// over all vertices), predecessor gathering, elimination of vertices not on
// any policy cycle (fixpoint), cycle identification, region-level minimum
// voting through a CAS cell, broadcast of the winning cycle, backward
// restoration of the winning cycle's component (fixpoint), breadth-layered
// re-attachment of everything else (fixpoint), predecessor gathering again,
// and backward value propagation from the winning anchor (fixpoint).
//
// All regions advance inside the same launches; a vertex participates only
// while its region is active (kWork). Fixpoint kernels read a pre-launch
// snapshot plane and write the other plane; the epilogue swaps them. This
// ping-pong makes both the final state and the iteration counts independent
// of the schedule, and keeps the per-vertex arithmetic identical to the
// sequential solver, which the lockstep tests check move for move.
//
// Write discipline: every kernel plain-writes only cells owned by its index
// (a vertex owns its flags, policy edge, value, slot, and the cells of its
// policy predecessors during value propagation, each of which has exactly
// one policy successor). Cross-vertex agreement goes through CasCell voting.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocm/bsp.hpp"
#include "ocm/graph.hpp"
#include "ocm/howard.hpp"
#include "ocm/policy.hpp"
#include "ocm/scc.hpp"

namespace ocm {

// Per-vertex policy-predecessor summary: how many vertices point here, and
// the offset (within this vertex's backward slots) of the first one that
// does. Lets backward kernels skip vertices with no predecessors and jump
// straight to the first relevant slot.
struct PredInfo {
    std::uint32_t count = 0;
    std::uint32_t first = 0;
};

// Offers `candidate` (an anchor whose slot holds a finalized record) to the
// region's voting cell. The cell ends up holding the least (mean, anchor)
// record ever offered, under any interleaving: a holder is replaced only by
// a strictly smaller record, so the global minimum always wins.
template <class M>
void vote_min(CasCell& cell, const std::vector<CycleRecord<M>>& slots, Vertex candidate) {
    std::uint64_t cur = cell.load();
    for (;;) {
        if (cur != CasCell::kEmpty &&
            !record_less(slots[candidate], slots[static_cast<Vertex>(cur)]))
            return;
        if (cell.compare_exchange(cur, candidate))
            return;
    }
}

template <class M> struct RegionResult {
    bool has_cycle = false;
    typename M::Lambda lambda{};
    CycleRecord<M> cycle;
    std::vector<Vertex> cycle_vertices;
    std::uint32_t iterations = 0; // improving passes inside this region
};

template <class M> struct ParResult {
    bool has_cycle = false;
    typename M::Lambda lambda{}; // least region optimum
    CycleRecord<M> cycle;
    std::vector<Vertex> cycle_vertices;
    std::vector<RegionResult<M>> regions;

    std::uint32_t outer_iterations = 0; // host iterations that rebuilt a policy
    std::uint32_t spf_passes = 0;       // improvement launches, final quiet ones included
    std::uint64_t launches = 0;         // engine launches consumed by this run
    std::uint64_t fixpoint_iterations = 0;
};

// Kernel-level solver state. Kernels are public member functions so tests
// can drive them one at a time; run() is the host loop.
template <class M> struct HowardPar {
    Engine& eng;
    const Graph& g;
    const RegionMap& rm;

    PolicyGraph pg;
    ValuePair<M> vals;
    std::uint32_t parity = 0; // plane read by the next improvement pass
    std::vector<typename M::Lambda> lambda; // per region
    std::vector<PredInfo> pred;
    std::vector<CycleRecord<M>> slots;  // per vertex, finalized at anchors only
    std::vector<Vertex> cycle_anchor;   // per vertex, anchor of its policy cycle
    std::vector<char> changed;          // per vertex, policy edge changed this pass
    std::vector<Vertex> source;         // per region, winning anchor this iteration
    std::vector<char> region_active;    // per region
    std::vector<CasCell> cells;         // per region voting slot
    std::vector<std::uint32_t> region_iters; // per region improving passes

    std::uint32_t spf_pass_count = 0;

    HowardPar(Engine& engine, const Graph& graph, const RegionMap& regions)
        : eng(engine), g(graph), rm(regions) {
        pg.init(g.n);
        vals.init(g.n);
        lambda.assign(rm.count, M::zero_lambda());
        pred.assign(g.n, {});
        slots.assign(g.n, {});
        cycle_anchor.assign(g.n, kNoVertex);
        changed.assign(g.n, 0);
        source.assign(rm.count, kNoVertex);
        region_active.assign(rm.count, 0);
        cells = std::vector<CasCell>(rm.count);
        region_iters.assign(rm.count, 0);
        plane_a_.assign(g.n, 0);
        plane_b_.assign(g.n, 0);
        plane_c_.assign(g.n, 0);
        plane_d_.assign(g.n, 0);
    }

    std::uint32_t region(Vertex v) const { return rm.region_of[v]; }
    bool working(Vertex v) const { return pg.flags[v] & kWork; }

    // Pre-pass: arms every vertex of a non-trivial region, leaves trivial
    // regions (single vertex, no self-loop) switched off for good.
    void init_work() {
        for (std::uint32_t r = 0; r < rm.count; ++r)
            region_active[r] = !rm.trivial[r] && !rm.members[r].empty();
        eng.launch(g.n, [this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            pg.flags[v] = region_active[region(v)] ? kWork : 0;
        });
    }

    // One improvement pass: every working vertex re-picks its out-edge
    // against its region's lambda, reading the parity plane and writing the
    // other one. Vertex-for-vertex identical to the sequential pass.
    void spf_pass_iter() {
        const auto& read = vals.plane[parity];
        auto& write = vals.plane[parity ^ 1];
        eng.launch(g.n, [&, this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            if (!working(v))
                return;
            const auto lam = lambda[region(v)];
            typename M::Value best{};
            EdgeId best_edge = kNoEdge;
            for (EdgeId e = g.out_begin(v); e != g.out_end(v); ++e) {
                const Vertex t = g.fwd_target[e];
                if (region(t) != region(v))
                    continue;
                const typename M::Value cand = M::extend(read[t], M::weight(g, e), lam);
                if (best_edge == kNoEdge || M::compare(cand, best, lam) < 0) {
                    best = cand;
                    best_edge = e;
                }
            }
            if (best_edge == kNoEdge)
                throw std::logic_error("spf_pass_iter: vertex " + std::to_string(v) +
                                       " has no successor inside its region");
            write[v] = best;
            eng.trace("spf", v);
            const EdgeId cur = pg.succ_edge[v];
            bool replace = cur == kNoEdge;
            if (!replace) {
                const typename M::Value cur_cand =
                    M::extend(read[g.fwd_target[cur]], M::weight(g, cur), lam);
                replace = M::strictly_better(best, cur_cand, lam);
            }
            if (replace) {
                pg.succ_edge[v] = best_edge;
                changed[v] = 1;
            } else {
                changed[v] = 0;
            }
        });
        ++spf_pass_count;
    }

    // Regions whose pass changed no policy edge are done.
    std::vector<std::uint32_t> finished_regions() const {
        std::vector<std::uint32_t> fin;
        for (std::uint32_t r = 0; r < rm.count; ++r) {
            if (!region_active[r])
                continue;
            bool any = false;
            for (Vertex v : rm.members[r])
                if (changed[v]) {
                    any = true;
                    break;
                }
            if (!any)
                fin.push_back(r);
        }
        return fin;
    }

    // Clears kWork across the given regions; their vertices are skipped by
    // every later kernel.
    void deactivate_regions(const std::vector<std::uint32_t>& finished) {
        if (finished.empty())
            return;
        std::vector<char> off(rm.count, 0);
        for (std::uint32_t r : finished)
            off[r] = 1;
        eng.launch(g.n, [&, this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            if (working(v) && off[region(v)]) {
                pg.flags[v] &= static_cast<std::uint8_t>(~kWork);
                eng.trace("deactivate", v);
            }
        });
        for (std::uint32_t r : finished)
            region_active[r] = 0;
    }

    // Gathers, per vertex, the number of policy predecessors and the offset
    // of the first backward slot carrying a policy edge.
    void gpi_preprocess() {
        eng.launch(g.n, [this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            if (!working(v))
                return;
            std::uint32_t count = 0, first = 0;
            for (EdgeId s = g.in_begin(v); s != g.in_end(v); ++s) {
                const Vertex u = g.bwd_source[s];
                if (pg.succ_edge[u] == g.bwd_fwd_edge[s]) {
                    if (count == 0)
                        first = s - g.in_begin(v);
                    ++count;
                }
            }
            pred[v] = {count, first};
            eng.trace("gpi", v);
        });
    }

    // Peels vertices with no live policy predecessor until only policy
    // cycles remain; commits the result into kEliminated. Returns the launch
    // count (progressing launches plus the final quiet one).
    std::size_t elimination_fixpoint() {
        std::fill(plane_a_.begin(), plane_a_.end(), 0);
        std::fill(plane_b_.begin(), plane_b_.end(), 0);
        char* prev = plane_a_.data();
        char* next = plane_b_.data();
        const std::size_t iters = eng.fixpoint(
            g.n,
            [&, this](std::size_t i, FixpointFlag& flag) {
                const Vertex v = static_cast<Vertex>(i);
                if (!working(v))
                    return;
                if (prev[v]) {
                    next[v] = 1;
                    return;
                }
                std::uint32_t counter = pred[v].count;
                bool live = false;
                for (EdgeId s = g.in_begin(v) + pred[v].first;
                     counter > 0 && s != g.in_end(v); ++s) {
                    const Vertex u = g.bwd_source[s];
                    if (pg.succ_edge[u] == g.bwd_fwd_edge[s]) {
                        --counter;
                        if (!prev[u]) {
                            live = true;
                            break;
                        }
                    }
                }
                if (!live) {
                    next[v] = 1;
                    flag.mark();
                    eng.trace("elim", v);
                } else {
                    next[v] = 0;
                }
            },
            [&] { std::swap(prev, next); });
        eng.launch(g.n, [&, this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            if (!working(v))
                return;
            if (prev[v])
                pg.flags[v] |= kEliminated;
            else
                pg.flags[v] &= static_cast<std::uint8_t>(~kEliminated);
            eng.trace("elim-commit", v);
        });
        return iters;
    }

    // Every surviving vertex walks its own policy cycle; the smallest vertex
    // of each cycle (its anchor) finalizes the record in its own slot.
    void cycle_identification() {
        eng.launch(g.n, [this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            if (!working(v))
                return;
            slots[v].clear();
            cycle_anchor[v] = kNoVertex;
            if (pg.flags[v] & kEliminated)
                return;
            Vertex anchor = v;
            std::size_t steps = 1;
            for (Vertex u = g.fwd_target[pg.succ_edge[v]]; u != v;
                 u = g.fwd_target[pg.succ_edge[u]]) {
                anchor = std::min(anchor, u);
                if (++steps > g.n)
                    throw std::logic_error("cycle_identification: walk left the cycle");
            }
            cycle_anchor[v] = anchor;
            if (anchor == v) {
                CycleRecord<M> rec;
                rec.anchor = v;
                rec.weight = M::zero_wsum();
                Vertex w = v;
                do {
                    const EdgeId e = pg.succ_edge[w];
                    rec.weight += M::weight(g, e);
                    ++rec.length;
                    w = g.fwd_target[e];
                } while (w != v);
                rec.mean = M::cycle_mean(rec.weight, rec.length);
                slots[v] = rec;
            }
            eng.trace("cycle-id", v);
        });
    }

    // Survivors offer their cycle to the region cell; the host then reads
    // each active region's winner and adopts its mean as the region lambda.
    void vote_and_adopt() {
        for (std::uint32_t r = 0; r < rm.count; ++r)
            if (region_active[r])
                cells[r].reset();
        eng.launch(g.n, [this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            if (!working(v) || (pg.flags[v] & kEliminated))
                return;
            vote_min(cells[region(v)], slots, cycle_anchor[v]);
        });
        for (std::uint32_t r = 0; r < rm.count; ++r) {
            if (!region_active[r])
                continue;
            const std::uint64_t winner = cells[r].load();
            if (winner == CasCell::kEmpty)
                throw std::logic_error("vote_and_adopt: active region offered no cycle");
            source[r] = static_cast<Vertex>(winner);
            if constexpr (M::exact) {
                // Lambda never increases within a region.
                if (region_iters[r] > 0 &&
                    M::mean_less(lambda[r], slots[source[r]].mean))
                    throw std::logic_error("vote_and_adopt: lambda increased");
            }
            lambda[r] = slots[source[r]].mean;
            ++region_iters[r];
        }
    }

    // Broadcast: marks the winning cycle's vertices, zeroes the winning
    // anchor's value on the plane propagation will fill, clears stale marks
    // and losing slots everywhere else.
    void set_min_cycle() {
        auto& val = vals.plane[parity];
        eng.launch(g.n, [&, this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            if (!working(v))
                return;
            const bool survivor = !(pg.flags[v] & kEliminated);
            if (survivor && cycle_anchor[v] == source[region(v)]) {
                pg.flags[v] |= kOnMinComponent;
                if (v == source[region(v)])
                    val[v] = M::zero_value();
            } else {
                pg.flags[v] &= static_cast<std::uint8_t>(~kOnMinComponent);
                if (survivor && cycle_anchor[v] == v)
                    slots[v].clear();
            }
            eng.trace("set-min", v);
        });
    }

    // Backward closure over policy edges: restores (un-eliminates) exactly
    // the vertices whose policy path reaches the winning cycle, one breadth
    // layer per launch.
    std::size_t mark_min_component_fixpoint() {
        for (Vertex v = 0; v < g.n; ++v)
            plane_a_[v] = working(v) && (pg.flags[v] & kOnMinComponent);
        std::fill(plane_b_.begin(), plane_b_.end(), 0);
        char* prev = plane_a_.data();
        char* next = plane_b_.data();
        const std::size_t iters = eng.fixpoint(
            g.n,
            [&, this](std::size_t i, FixpointFlag& flag) {
                const Vertex v = static_cast<Vertex>(i);
                if (!working(v))
                    return;
                if (prev[v]) {
                    next[v] = 1;
                    return;
                }
                if (prev[g.fwd_target[pg.succ_edge[v]]]) {
                    next[v] = 1;
                    flag.mark();
                    eng.trace("mark-min", v);
                } else {
                    next[v] = 0;
                }
            },
            [&] { std::swap(prev, next); });
        eng.launch(g.n, [&, this](std::size_t i) {
            const Vertex v = static_cast<Vertex>(i);
            if (!working(v) || !prev[v])
                return;
            pg.flags[v] |= kOnMinComponent;
            pg.flags[v] &= static_cast<std::uint8_t>(~kEliminated);
            eng.trace("mark-min-commit", v);
        });
        return iters;
    }

    // Attaches every vertex outside the kept component, one breadth layer
    // per launch; each attaching vertex picks its smallest out-edge whose
    // head was connected in an earlier layer. The frontier plane mirrors the
    // sequential layer discipline exactly.
    std::size_t connect_gpi_fixpoint() {
        for (Vertex v = 0; v < g.n; ++v) {
            plane_a_[v] = working(v) && (pg.flags[v] & kOnMinComponent);
            plane_c_[v] = plane_a_[v];
        }
        std::fill(plane_b_.begin(), plane_b_.end(), 0);
        std::fill(plane_d_.begin(), plane_d_.end(), 0);
        char* conn_prev = plane_a_.data();
        char* conn_next = plane_b_.data();
        char* front_prev = plane_c_.data();
        char* front_next = plane_d_.data();
        const std::size_t iters = eng.fixpoint(
            g.n,
            [&, this](std::size_t i, FixpointFlag& flag) {
                const Vertex v = static_cast<Vertex>(i);
                if (!working(v))
                    return;
                if (conn_prev[v]) {
                    conn_next[v] = 1;
                    front_next[v] = 0;
                    return;
                }
                bool frontier = false;
                for (EdgeId e = g.out_begin(v); e != g.out_end(v); ++e) {
                    const Vertex t = g.fwd_target[e];
                    if (region(t) == region(v) && front_prev[t]) {
                        frontier = true;
                        break;
                    }
                }
                if (!frontier) {
                    conn_next[v] = 0;
                    front_next[v] = 0;
                    return;
                }
                for (EdgeId e = g.out_begin(v); e != g.out_end(v); ++e) {
                    const Vertex t = g.fwd_target[e];
                    if (region(t) == region(v) && conn_prev[t]) {
                        pg.succ_edge[v] = e; // smallest such edge id
                        break;
                    }
                }
                conn_next[v] = 1;
                front_next[v] = 1;
                flag.mark();
                eng.trace("connect", v);
            },
            [&] {
                std::swap(conn_prev, conn_next);
                std::swap(front_prev, front_next);
            });
        for (Vertex v = 0; v < g.n; ++v)
            if (working(v) && !conn_prev[v])
                throw std::logic_error("connect_gpi_fixpoint: region is not strongly connected");
        return iters;
    }

    // Backward value propagation from each active region's winning anchor,
    // pushing along gathered predecessor slots. A vertex owns the value and
    // reached cells of its policy predecessors (it is their unique policy
    // successor), so writes stay single-owner.
    std::size_t value_propagate_fixpoint() {
        auto& val = vals.plane[parity];
        for (Vertex v = 0; v < g.n; ++v)
            plane_a_[v] = working(v) && v == source[region(v)];
        std::fill(plane_b_.begin(), plane_b_.end(), 0);
        char* prev = plane_a_.data();
        char* next = plane_b_.data();
        return eng.fixpoint(
            g.n,
            [&, this](std::size_t i, FixpointFlag& flag) {
                const Vertex v = static_cast<Vertex>(i);
                if (!working(v))
                    return;
                std::uint32_t counter = pred[v].count;
                if (counter == 0)
                    return;
                const bool v_reached = prev[v];
                const auto lam = lambda[region(v)];
                for (EdgeId s = g.in_begin(v) + pred[v].first;
                     counter > 0 && s != g.in_end(v); ++s) {
                    const Vertex u = g.bwd_source[s];
                    const EdgeId e = g.bwd_fwd_edge[s];
                    if (pg.succ_edge[u] != e)
                        continue;
                    --counter;
                    if (prev[u]) {
                        next[u] = 1; // carry: u stays reached
                    } else if (v_reached && u != source[region(u)]) {
                        val[u] = M::extend(val[v], M::weight(g, e), lam);
                        next[u] = 1;
                        flag.mark();
                        eng.trace("val-prop", u);
                    }
                }
            },
            [&] { std::swap(prev, next); });
    }

    // Walks the winning cycle of region r from its anchor (policy edges on
    // the cycle are final by the time this is called).
    std::vector<Vertex> region_cycle_vertices(std::uint32_t r) const {
        std::vector<Vertex> out;
        Vertex u = source[r];
        do {
            out.push_back(u);
            u = g.fwd_target[pg.succ_edge[u]];
        } while (u != source[r]);
        return out;
    }

    ParResult<M> run(HowardTrace<M>* trace = nullptr) {
        const std::uint64_t launches0 = eng.launches();
        const std::uint64_t fixiter0 = eng.fixpoint_iterations();
        ParResult<M> out;
        out.regions.resize(rm.count);

        init_work();
        std::size_t active = 0;
        for (std::uint32_t r = 0; r < rm.count; ++r)
            active += region_active[r];

        while (active > 0) {
            spf_pass_iter();
            const std::vector<std::uint32_t> finished = finished_regions();
            for (std::uint32_t r : finished)
                if (region_iters[r] == 0)
                    throw std::logic_error("howard_par: first improvement pass made no change");
            deactivate_regions(finished);
            active -= finished.size();
            if (active == 0)
                break;

            ++out.outer_iterations;
            parity ^= 1;
            gpi_preprocess();
            elimination_fixpoint();
            cycle_identification();
            vote_and_adopt();
            set_min_cycle();
            mark_min_component_fixpoint();
            connect_gpi_fixpoint();
            gpi_preprocess();
            value_propagate_fixpoint();

            for (std::uint32_t r = 0; r < rm.count; ++r) {
                if (!region_active[r])
                    continue;
                RegionResult<M>& rr = out.regions[r];
                rr.has_cycle = true;
                rr.lambda = lambda[r];
                rr.cycle = slots[source[r]];
                rr.cycle_vertices = region_cycle_vertices(r);
                rr.iterations = region_iters[r];
            }
            if (trace && rm.count == 1)
                trace->push_back({lambda[0], pg.succ_edge, vals.plane[parity]});
        }

        std::uint32_t best = kNoVertex;
        for (std::uint32_t r = 0; r < rm.count; ++r) {
            if (!out.regions[r].has_cycle)
                continue;
            if (best == kNoVertex || record_less(out.regions[r].cycle, out.regions[best].cycle))
                best = r;
        }
        if (best != kNoVertex) {
            const RegionResult<M>& win = out.regions[best];
            out.has_cycle = true;
            out.lambda = win.lambda;
            out.cycle = win.cycle;
            out.cycle_vertices = win.cycle_vertices;
        }
        out.spf_passes = spf_pass_count;
        out.launches = eng.launches() - launches0;
        out.fixpoint_iterations = eng.fixpoint_iterations() - fixiter0;
        return out;
    }

  private:
    std::vector<char> plane_a_, plane_b_, plane_c_, plane_d_;
};

// Whole-graph entry point; the input must be strongly connected (augment
// first if it is not).
template <class M>
ParResult<M> howard_par_solve(Engine& eng, const Graph& g, HowardTrace<M>* trace = nullptr) {
    const RegionMap rm = single_region(g);
    HowardPar<M> solver(eng, g, rm);
    return solver.run(trace);
}

// Region-concurrent entry point over an SCC partition of any digraph; the
// optimum is the least region optimum, and "no cycle" shows up as
// has_cycle = false (every region trivial).
template <class M>
ParResult<M> solve_decomposed(Engine& eng, const Graph& g, const RegionMap& rm,
                              HowardTrace<M>* trace = nullptr) {
    HowardPar<M> solver(eng, g, rm);
    return solver.run(trace);
}

} // namespace ocm
