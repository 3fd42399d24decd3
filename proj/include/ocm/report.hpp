// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Result and statistics formatting shared by the CLI and the tests.
//
// mu* prints as the exact fraction "p/q" (plain "p" for integers) in
// integer-exact mode and as a 12-significant-digit decimal otherwise; the
// JSON report carries the same string, so the two outputs can never
// disagree. JSON deliberately excludes wall-clock time: running the same
// solve twice yields byte-identical reports.

#include <cstdint>
#include <string>
#include <vector>

#include "ocm/solve.hpp"

namespace ocm {

struct ReportContext {
    std::string graph;   // input path or generated model name
    std::string algo;    // flag spelling, e.g. "howard-par"
    std::string objective; // "min" or "max"
    Vertex n = 0;
    EdgeId m = 0;
};

// "p", "p/q", or a %.12g decimal; meaningful only when s.has_cycle.
std::string format_mu(const Solution& s);

// Multi-line human report: mu_star (or "no cycle"), cycle vertices when
// known, stats, wall-clock.
std::string human_report(const ReportContext& ctx, const Solution& s, double wall_ms);

// Deterministic JSON document (trailing newline, sorted keys, no timing).
std::string json_report(const ReportContext& ctx, const Solution& s);

// Benchmark CSV. Schema is stable:
//   graph,n,m,n*m,algo,mu_star,wall_ms,outer_iters,launches,spf_passes
std::string csv_header();
std::string csv_row(const ReportContext& ctx, const Solution& s, double wall_ms);

// Exact median: middle value for odd counts, mean of the two middle values
// for even counts. Throws std::invalid_argument on an empty sample.
double exact_median(std::vector<double> samples);

} // namespace ocm
