// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ocm/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ocm {

namespace {

std::string format_double(double x, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

} // namespace

std::string format_mu(const Solution& s) {
    if (s.exact)
        return s.mu_exact.str();
    return format_double(s.mu, "%.12g");
}

std::string human_report(const ReportContext& ctx, const Solution& s, double wall_ms) {
    std::ostringstream os;
    os << "graph: " << ctx.graph << " (n=" << ctx.n << ", m=" << ctx.m << ")\n";
    os << "algo: " << ctx.algo << " objective: " << ctx.objective << "\n";
    if (!s.has_cycle) {
        os << "no cycle\n";
    } else {
        os << "mu_star = " << format_mu(s) << "\n";
        if (!s.cycle_vertices.empty()) {
            os << "cycle:";
            for (Vertex v : s.cycle_vertices)
                os << ' ' << v;
            os << "\n";
        }
    }
    os << "outer_iters = " << s.stats.outer_iters << ", spf_passes = " << s.stats.spf_passes
       << ", launches = " << s.stats.launches << ", regions = " << s.stats.regions << "\n";
    os << "wall_ms = " << format_double(wall_ms, "%.3f") << "\n";
    return os.str();
}

std::string json_report(const ReportContext& ctx, const Solution& s) {
    nlohmann::json j;
    j["graph"] = ctx.graph;
    j["n"] = ctx.n;
    j["m"] = ctx.m;
    j["algo"] = ctx.algo;
    j["objective"] = ctx.objective;
    j["has_cycle"] = s.has_cycle;
    j["exact"] = s.exact;
    if (s.has_cycle) {
        j["mu_star"] = format_mu(s);
        j["mu_star_double"] = s.mu;
        j["cycle"] = s.cycle_vertices;
    } else {
        j["mu_star"] = nullptr;
    }
    j["stats"] = {
        {"outer_iters", s.stats.outer_iters},
        {"spf_passes", s.stats.spf_passes},
        {"launches", s.stats.launches},
        {"fixpoint_iters", s.stats.fixpoint_iters},
        {"regions", s.stats.regions},
        {"trivial_regions", s.stats.trivial_regions},
    };
    return j.dump(2) + "\n";
}

std::string csv_header() {
    return "graph,n,m,n*m,algo,mu_star,wall_ms,outer_iters,launches,spf_passes";
}

std::string csv_row(const ReportContext& ctx, const Solution& s, double wall_ms) {
    std::ostringstream os;
    os << ctx.graph << ',' << ctx.n << ',' << ctx.m << ','
       << static_cast<unsigned long long>(ctx.n) * ctx.m << ',' << ctx.algo << ','
       << (s.has_cycle ? format_mu(s) : std::string("none")) << ','
       << format_double(wall_ms, "%.3f") << ',' << s.stats.outer_iters << ','
       << s.stats.launches << ',' << s.stats.spf_passes;
    return os.str();
}

double exact_median(std::vector<double> samples) {
    if (samples.empty())
        throw std::invalid_argument("median of an empty sample");
    std::sort(samples.begin(), samples.end());
    const std::size_t h = samples.size() / 2;
    if (samples.size() % 2 == 1)
        return samples[h];
    return (samples[h - 1] + samples[h]) / 2.0;
}

} // namespace ocm
