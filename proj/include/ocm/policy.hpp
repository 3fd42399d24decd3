// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared vocabulary of the policy-iteration solvers.
//
// A policy is one chosen out-edge per vertex, so the policy graph is a
// functional graph: every weakly connected component contains exactly one
// cycle with trees hanging off it. Vertex values live in two planes indexed
// by iteration parity: an improvement pass reads plane i and writes plane
// i^1, then value propagation overwrites the written plane from the new
// cycle's anchor.
//
// Arithmetic is pluggable. ExactMode keeps a vertex value as the pair
// (wsum, steps) meaning wsum - steps*lambda; within one iteration every
// compared value is relative to the same lambda = num/den, so comparisons
// reduce to cross-multiplied 128-bit integer tests and nothing ever rounds.
// FloatMode stores plain doubles and treats candidates within a relative
// 1e-9 band as equal during policy replacement, which keeps the iteration
// from oscillating on round-off.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ocm/graph.hpp"
#include "ocm/rational.hpp"

namespace ocm {

enum PolicyFlag : std::uint8_t {
    kEliminated = 1,     // trimmed off the policy graph (not on a policy cycle)
    kPropagate = 2,      // frontier marker during connect / propagate phases
    kWork = 4,           // vertex belongs to a still-active region
    kOnMinComponent = 8, // vertex of the kept (minimum cycle) component
};

struct PolicyGraph {
    std::vector<EdgeId> succ_edge;  // chosen out-edge per vertex, kNoEdge = unset
    std::vector<std::uint8_t> flags;

    void init(Vertex n) {
        succ_edge.assign(n, kNoEdge);
        flags.assign(n, 0);
    }
};

struct ExactMode {
    static constexpr bool exact = true;
    using Weight = std::int64_t;
    using WSum = std::int64_t;
    using Lambda = Rational;
    struct Value {
        std::int64_t wsum = 0;
        std::int64_t steps = 0;

        bool operator==(const Value&) const = default;
    };

    static Weight weight(const Graph& g, EdgeId e) { return g.weight_int(e); }
    static Value zero_value() { return {}; }
    static Lambda zero_lambda() { return Rational(0, 1); }
    static WSum zero_wsum() { return 0; }

    static Value extend(const Value& v, Weight w, const Lambda&) {
        return {v.wsum + w, v.steps + 1};
    }

    // Sign of value(a) - value(b) where value(x) = x.wsum - x.steps*lambda.
    static int compare(const Value& a, const Value& b, const Lambda& l) {
        const __int128 lhs = static_cast<__int128>(a.wsum - b.wsum) * l.den;
        const __int128 rhs = static_cast<__int128>(a.steps - b.steps) * l.num;
        if (lhs < rhs)
            return -1;
        if (lhs > rhs)
            return 1;
        return 0;
    }

    static bool strictly_better(const Value& cand, const Value& incumbent, const Lambda& l) {
        return compare(cand, incumbent, l) < 0;
    }

    static Lambda cycle_mean(WSum w, std::uint32_t len) {
        return Rational(w, static_cast<std::int64_t>(len));
    }
    static bool mean_less(const Lambda& a, const Lambda& b) { return a < b; }
    static double to_double(const Lambda& l) { return l.to_double(); }
};

struct FloatMode {
    static constexpr bool exact = false;
    using Weight = double;
    using WSum = double;
    using Lambda = double;
    using Value = double;

    static constexpr double kRelTol = 1e-9;

    static Weight weight(const Graph& g, EdgeId e) { return g.fwd_weight[e]; }
    static Value zero_value() { return 0.0; }
    static Lambda zero_lambda() { return 0.0; }
    static WSum zero_wsum() { return 0.0; }

    static Value extend(Value v, Weight w, Lambda l) { return v + w - l; }

    static int compare(Value a, Value b, Lambda) {
        if (a < b)
            return -1;
        if (a > b)
            return 1;
        return 0;
    }

    static bool strictly_better(Value cand, Value incumbent, Lambda) {
        const double tol =
            kRelTol * std::max({1.0, std::fabs(cand), std::fabs(incumbent)});
        return cand < incumbent - tol;
    }

    static Lambda cycle_mean(WSum w, std::uint32_t len) { return w / len; }
    static bool mean_less(Lambda a, Lambda b) { return a < b; }
    static double to_double(Lambda l) { return l; }
};

template <class M> struct CycleRecord {
    Vertex anchor = kNoVertex; // smallest vertex on the cycle
    std::uint32_t length = 0;
    typename M::WSum weight{};
    typename M::Lambda mean{};

    bool valid() const { return anchor != kNoVertex; }
    void clear() { *this = CycleRecord{}; }
};

// Strict total order on cycle records: by mean, anchor id breaking ties.
template <class M> bool record_less(const CycleRecord<M>& a, const CycleRecord<M>& b) {
    if (M::mean_less(a.mean, b.mean))
        return true;
    if (M::mean_less(b.mean, a.mean))
        return false;
    return a.anchor < b.anchor;
}

template <class M> struct ValuePair {
    std::array<std::vector<typename M::Value>, 2> plane;

    void init(Vertex n) {
        plane[0].assign(n, M::zero_value());
        plane[1].assign(n, M::zero_value());
    }
};

// Optional restriction of a solver to one region of a vertex partition.
struct RegionView {
    const std::vector<std::uint32_t>* region_of = nullptr;
    std::uint32_t region = 0;

    bool whole_graph() const { return region_of == nullptr; }
    bool contains(Vertex v) const { return !region_of || (*region_of)[v] == region; }
};

} // namespace ocm
