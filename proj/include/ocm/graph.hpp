// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Directed multigraph in CSR form with an explicit backward (transposed) CSR.
// Edge ids are CSR positions: edges are grouped by source vertex, input order
// preserved within each group, so ids are deterministic for a given input
// sequence. The backward CSR stores, per incoming slot, the source vertex and
// the forward edge id it mirrors (bwd_fwd_edge), which is how weight lookups
// and policy-membership checks are done when scanning predecessors.

#include <cstdint>
#include <limits>
#include <vector>

#include "ocm/rational.hpp"

namespace ocm {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

enum class Objective { Minimize, Maximize };

struct EdgeInput {
    Vertex u = 0;
    Vertex v = 0;
    double w = 0.0;
};

struct Graph {
    Vertex n = 0;
    EdgeId m = 0;

    std::vector<EdgeId> fwd_index;  // size n+1
    std::vector<Vertex> fwd_target; // size m
    std::vector<Vertex> fwd_source; // size m (source of edge id e)
    std::vector<double> fwd_weight; // size m

    std::vector<EdgeId> bwd_index;    // size n+1
    std::vector<Vertex> bwd_source;   // size m, grouped by target
    std::vector<EdgeId> bwd_fwd_edge; // size m, forward edge id per slot

    // True when every weight is integral (and small enough to be exact in a
    // double); enables exact rational arithmetic end to end.
    bool integer_exact = false;

    EdgeId out_begin(Vertex v) const { return fwd_index[v]; }
    EdgeId out_end(Vertex v) const { return fwd_index[v + 1]; }
    EdgeId in_begin(Vertex v) const { return bwd_index[v]; }
    EdgeId in_end(Vertex v) const { return bwd_index[v + 1]; }

    std::int64_t weight_int(EdgeId e) const { return static_cast<std::int64_t>(fwd_weight[e]); }

    bool has_self_loop(Vertex v) const {
        for (EdgeId e = out_begin(v); e != out_end(v); ++e)
            if (fwd_target[e] == v)
                return true;
        return false;
    }

    std::vector<EdgeInput> edges() const {
        std::vector<EdgeInput> es(m);
        for (EdgeId e = 0; e < m; ++e)
            es[e] = {fwd_source[e], fwd_target[e], fwd_weight[e]};
        return es;
    }
};

// Builds the CSR pair. Throws std::invalid_argument on out-of-range endpoints
// or non-finite weights.
Graph build_graph(Vertex n, const std::vector<EdgeInput>& edges);

// Swaps edge directions. The backward CSR of the result equals the forward
// CSR of the input (involution, tested as a structural invariant).
Graph transpose(const Graph& g);

// Copy with every weight negated. maximize(g, w) == -minimize(g, -w).
Graph negate_weights(const Graph& g);

// Adds a fresh root vertex with id n and zero-weight edges root->v for every
// original vertex. Original edge ids are preserved (the root's group sits at
// the end of the CSR). The root lies on no cycle, so the cycle structure and
// every cycle mean are unchanged.
Graph augment_root(const Graph& g);

struct HamiltonianAugmented {
    Graph graph;
    double big_w = 0.0;
    // Strict upper bound on every original cycle mean; an optimal mean above
    // it proves the original graph was acyclic.
    double no_cycle_above = 0.0;
};

// Adds the cycle v_i -> v_(i+1 mod n) with weight big_w, making the graph
// strongly connected. big_w defaults to 2n*(max|w|+1)+1, large enough that
// any cycle through an added edge has mean strictly above every original
// cycle mean, so the optimal mean is preserved whenever the input has a
// cycle at all.
HamiltonianAugmented augment_hamiltonian(const Graph& g, double big_w = 0.0);

} // namespace ocm
