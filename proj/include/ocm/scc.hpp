// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Strongly connected component decomposition into solver regions.
//
// tarjan_scc is the sequential reference: region ids follow completion order
// of the classic low-link search started from vertex 0 upward, so ids are
// deterministic. parallel_scc runs trimming plus pivoted forward/backward
// reachability through the bulk-synchronous engine; it produces the same
// partition up to region relabeling (compare with canonical_partition).
//
// A region is trivial iff it is a single vertex without a self-loop; trivial
// regions carry no cycle and are skipped by the region solvers.

#include <cstdint>
#include <vector>

#include "ocm/bsp.hpp"
#include "ocm/graph.hpp"

namespace ocm {

struct RegionMap {
    std::uint32_t count = 0;
    std::vector<std::uint32_t> region_of;   // per vertex
    std::vector<std::vector<Vertex>> members; // per region, ascending
    std::vector<std::uint8_t> trivial;        // per region

    // Fills members/trivial from count/region_of.
    void finalize(const Graph& g);
};

RegionMap tarjan_scc(const Graph& g);

RegionMap parallel_scc(Engine& eng, const Graph& g);

// Whole graph as one non-trivial region (standalone solver runs).
RegionMap single_region(const Graph& g);

// Partition as a set of sorted member lists, sorted by smallest member;
// equal partitions compare equal regardless of region numbering.
std::vector<std::vector<Vertex>> canonical_partition(const RegionMap& rm);

struct SubgraphExtract {
    Graph graph;
    std::vector<Vertex> to_original; // local vertex -> original id
};

// Induced subgraph on `vertices` (need not be sorted; result vertices are
// renumbered in ascending original order, edges keep ascending original id
// order).
SubgraphExtract induced_subgraph(const Graph& g, std::vector<Vertex> vertices);

} // namespace ocm
