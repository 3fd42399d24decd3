// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ocm/scc.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocm {

void RegionMap::finalize(const Graph& g) {
    members.assign(count, {});
    for (Vertex v = 0; v < g.n; ++v)
        members[region_of[v]].push_back(v); // ascending by construction
    trivial.assign(count, 0);
    for (std::uint32_t r = 0; r < count; ++r)
        trivial[r] = members[r].size() == 1 && !g.has_self_loop(members[r][0]);
}

RegionMap tarjan_scc(const Graph& g) {
    RegionMap rm;
    rm.region_of.assign(g.n, kNoVertex);

    std::vector<std::uint32_t> index(g.n, 0), lowlink(g.n, 0);
    std::vector<char> on_stack(g.n, 0);
    std::vector<Vertex> stack;
    std::uint32_t next_index = 1; // 0 = unvisited

    struct Frame {
        Vertex v;
        EdgeId next;
    };
    std::vector<Frame> call;

    for (Vertex root = 0; root < g.n; ++root) {
        if (index[root] != 0)
            continue;
        call.push_back({root, g.out_begin(root)});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next != g.out_end(f.v)) {
                const Vertex t = g.fwd_target[f.next++];
                if (index[t] == 0) {
                    call.push_back({t, g.out_begin(t)});
                    index[t] = lowlink[t] = next_index++;
                    stack.push_back(t);
                    on_stack[t] = 1;
                } else if (on_stack[t]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[t]);
                }
                continue;
            }
            // f.v done: complete a component if it is a root.
            if (lowlink[f.v] == index[f.v]) {
                const std::uint32_t r = rm.count++;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    rm.region_of[w] = r;
                } while (w != f.v);
            }
            const Vertex done = f.v;
            call.pop_back();
            if (!call.empty()) {
                const Vertex p = call.back().v;
                lowlink[p] = std::min(lowlink[p], lowlink[done]);
            }
        }
    }
    rm.finalize(g);
    return rm;
}

namespace {

constexpr std::uint32_t kUnassigned = ~std::uint32_t{0};

} // namespace

RegionMap parallel_scc(Engine& eng, const Graph& g) {
    RegionMap rm;
    rm.region_of.assign(g.n, kUnassigned);
    if (g.n == 0) {
        rm.finalize(g);
        return rm;
    }

    std::vector<std::uint32_t> tag(g.n, 0);
    std::uint32_t tag_count = 1;

    std::vector<char> plane_a(g.n, 0), plane_b(g.n, 0);
    std::vector<char> fmark(g.n, 0), bmark(g.n, 0), fnext(g.n, 0), bnext(g.n, 0);

    auto unassigned = [&](Vertex v) { return rm.region_of[v] == kUnassigned; };

    std::size_t left = g.n;
    while (left > 0) {
        // Trim: peel vertices with no live predecessor or no live successor
        // inside their tagged subgraph; each peeled vertex is its own
        // (singleton) component.
        std::fill(plane_a.begin(), plane_a.end(), 0);
        std::fill(plane_b.begin(), plane_b.end(), 0);
        char* prev = plane_a.data();
        char* next = plane_b.data();
        eng.fixpoint(
            g.n,
            [&](std::size_t i, FixpointFlag& flag) {
                const Vertex v = static_cast<Vertex>(i);
                if (!unassigned(v))
                    return;
                if (prev[v]) {
                    next[v] = 1;
                    return;
                }
                const std::uint32_t t = tag[v];
                bool has_in = false, has_out = false;
                for (EdgeId s = g.in_begin(v); s != g.in_end(v) && !has_in; ++s) {
                    const Vertex u = g.bwd_source[s];
                    has_in = unassigned(u) && tag[u] == t && !prev[u];
                }
                for (EdgeId e = g.out_begin(v); e != g.out_end(v) && !has_out; ++e) {
                    const Vertex u = g.fwd_target[e];
                    has_out = unassigned(u) && tag[u] == t && !prev[u];
                }
                if (!has_in || !has_out) {
                    next[v] = 1;
                    eng.trace("trim", v);
                    flag.mark();
                } else {
                    next[v] = 0;
                }
            },
            [&] {
                std::swap(prev, next);
            });
        for (Vertex v = 0; v < g.n; ++v) {
            if (unassigned(v) && prev[v]) {
                rm.region_of[v] = rm.count++;
                --left;
            }
        }
        if (left == 0)
            break;

        // Pivots: smallest live vertex per tag.
        std::vector<Vertex> pivot(tag_count, kNoVertex);
        for (Vertex v = 0; v < g.n; ++v)
            if (unassigned(v) && pivot[tag[v]] == kNoVertex)
                pivot[tag[v]] = v;

        // Forward reachability from each pivot inside its tag.
        std::fill(fmark.begin(), fmark.end(), 0);
        std::fill(fnext.begin(), fnext.end(), 0);
        char* fprev = fmark.data();
        char* fnxt = fnext.data();
        eng.fixpoint(
            g.n,
            [&](std::size_t i, FixpointFlag& flag) {
                const Vertex v = static_cast<Vertex>(i);
                if (!unassigned(v))
                    return;
                if (fprev[v]) {
                    fnxt[v] = 1;
                    return;
                }
                bool reach = pivot[tag[v]] == v;
                for (EdgeId s = g.in_begin(v); s != g.in_end(v) && !reach; ++s) {
                    const Vertex u = g.bwd_source[s];
                    reach = unassigned(u) && tag[u] == tag[v] && fprev[u];
                }
                fnxt[v] = reach;
                if (reach) {
                    eng.trace("fwd", v);
                    flag.mark();
                }
            },
            [&] { std::swap(fprev, fnxt); });

        // Backward reachability (who can reach the pivot).
        std::fill(bmark.begin(), bmark.end(), 0);
        std::fill(bnext.begin(), bnext.end(), 0);
        char* bprev = bmark.data();
        char* bnxt = bnext.data();
        eng.fixpoint(
            g.n,
            [&](std::size_t i, FixpointFlag& flag) {
                const Vertex v = static_cast<Vertex>(i);
                if (!unassigned(v))
                    return;
                if (bprev[v]) {
                    bnxt[v] = 1;
                    return;
                }
                bool reach = pivot[tag[v]] == v;
                for (EdgeId e = g.out_begin(v); e != g.out_end(v) && !reach; ++e) {
                    const Vertex u = g.fwd_target[e];
                    reach = unassigned(u) && tag[u] == tag[v] && bprev[u];
                }
                bnxt[v] = reach;
                if (reach) {
                    eng.trace("bwd", v);
                    flag.mark();
                }
            },
            [&] { std::swap(bprev, bnxt); });

        // Partition: F∩B is the pivot's component; the three remainders
        // become fresh subgraphs.
        std::vector<std::uint32_t> scc_region(tag_count, kUnassigned);
        // old tag * 3 + quadrant -> new dense tag
        std::vector<std::uint32_t> remap(static_cast<std::size_t>(tag_count) * 3, kUnassigned);
        std::uint32_t new_tags = 0;
        for (Vertex v = 0; v < g.n; ++v) {
            if (!unassigned(v))
                continue;
            const std::uint32_t t = tag[v];
            if (fprev[v] && bprev[v]) {
                if (scc_region[t] == kUnassigned)
                    scc_region[t] = rm.count++;
                rm.region_of[v] = scc_region[t];
                --left;
                continue;
            }
            const std::uint32_t quadrant = fprev[v] ? 0u : (bprev[v] ? 1u : 2u);
            std::uint32_t& slot = remap[t * 3 + quadrant];
            if (slot == kUnassigned)
                slot = new_tags++;
            tag[v] = slot;
        }
        tag_count = std::max(new_tags, 1u);
    }

    rm.finalize(g);
    return rm;
}

RegionMap single_region(const Graph& g) {
    RegionMap rm;
    rm.count = 1;
    rm.region_of.assign(g.n, 0);
    rm.members.assign(1, {});
    for (Vertex v = 0; v < g.n; ++v)
        rm.members[0].push_back(v);
    rm.trivial.assign(1, 0);
    return rm;
}

std::vector<std::vector<Vertex>> canonical_partition(const RegionMap& rm) {
    std::vector<std::vector<Vertex>> parts = rm.members;
    for (auto& p : parts)
        std::sort(p.begin(), p.end());
    std::sort(parts.begin(), parts.end());
    return parts;
}

SubgraphExtract induced_subgraph(const Graph& g, std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<std::uint32_t> local(g.n, kNoVertex);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        local[vertices[i]] = static_cast<std::uint32_t>(i);
    std::vector<EdgeInput> edges;
    for (EdgeId e = 0; e < g.m; ++e) {
        const Vertex u = g.fwd_source[e], v = g.fwd_target[e];
        if (local[u] != kNoVertex && local[v] != kNoVertex)
            edges.push_back({local[u], local[v], g.fwd_weight[e]});
    }
    SubgraphExtract out;
    out.graph = build_graph(static_cast<Vertex>(vertices.size()), edges);
    out.to_original = std::move(vertices);
    return out;
}

} // namespace ocm
