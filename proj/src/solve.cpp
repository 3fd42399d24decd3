// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ocm/solve.hpp"

#include <stdexcept>

#include "ocm/alt_solvers.hpp"
#include "ocm/howard.hpp"
#include "ocm/howard_par.hpp"
#include "ocm/oracle.hpp"
#include "ocm/scc.hpp"

namespace ocm {
namespace {

template <class M> void set_mean(Solution& s, const typename M::Lambda& l) {
    s.has_cycle = true;
    s.mu = M::to_double(l);
    if constexpr (M::exact) {
        s.exact = true;
        s.mu_exact = l;
    }
}

// Whether an optimum of the Hamiltonian-augmented graph proves the original
// graph acyclic. The bound is integral whenever the weights are.
template <class M> bool proves_acyclic(const typename M::Lambda& l, double bound) {
    if constexpr (M::exact)
        return Rational::integer(static_cast<std::int64_t>(bound)) < l;
    else
        return bound < l;
}

RegionMap make_regions(Engine& eng, const Graph& g, SccStrategy strategy) {
    if (strategy == SccStrategy::Parallel)
        return parallel_scc(eng, g);
    return tarjan_scc(g);
}

void fill_region_stats(Solution& s, const RegionMap& rm) {
    s.stats.regions = rm.count;
    for (std::uint32_t r = 0; r < rm.count; ++r)
        s.stats.trivial_regions += rm.trivial[r] ? 1u : 0u;
}

template <class M> Solution run_howard_seq(Engine& eng, const Graph& g, const SolveOptions& opt) {
    Solution s;
    if (opt.scc == SccStrategy::Off) {
        const HamiltonianAugmented aug = augment_hamiltonian(g);
        const HowardResult<M> r = howard_solve<M>(aug.graph);
        s.stats.outer_iters = r.outer_iterations;
        s.stats.spf_passes = r.improvement_passes;
        s.stats.regions = 1;
        if (!proves_acyclic<M>(r.lambda, aug.no_cycle_above)) {
            set_mean<M>(s, r.lambda);
            s.cycle_vertices = r.cycle_vertices;
        }
        return s;
    }

    const RegionMap rm = make_regions(eng, g, opt.scc);
    fill_region_stats(s, rm);
    bool found = false;
    CycleRecord<M> best{};
    for (std::uint32_t r = 0; r < rm.count; ++r) {
        if (rm.trivial[r])
            continue;
        const RegionView view{&rm.region_of, r};
        const HowardResult<M> res = howard_solve<M>(g, view);
        s.stats.outer_iters += res.outer_iterations;
        s.stats.spf_passes += res.improvement_passes;
        // Anchors are globally unique, so record order picks one winner.
        if (!found || record_less(res.cycle, best)) {
            found = true;
            best = res.cycle;
            s.cycle_vertices = res.cycle_vertices;
            set_mean<M>(s, res.lambda);
        }
    }
    if (!found)
        s.cycle_vertices.clear();
    return s;
}

template <class M> Solution run_howard_par(Engine& eng, const Graph& g, const SolveOptions& opt) {
    Solution s;
    if (opt.scc == SccStrategy::Off) {
        const HamiltonianAugmented aug = augment_hamiltonian(g);
        const ParResult<M> r = howard_par_solve<M>(eng, aug.graph);
        s.stats.outer_iters = r.outer_iterations;
        s.stats.spf_passes = r.spf_passes;
        s.stats.launches = r.launches;
        s.stats.fixpoint_iters = r.fixpoint_iterations;
        s.stats.regions = 1;
        if (!proves_acyclic<M>(r.lambda, aug.no_cycle_above)) {
            set_mean<M>(s, r.lambda);
            s.cycle_vertices = r.cycle_vertices;
        }
        return s;
    }

    const RegionMap rm = make_regions(eng, g, opt.scc);
    const ParResult<M> r = solve_decomposed<M>(eng, g, rm);
    fill_region_stats(s, rm);
    s.stats.outer_iters = r.outer_iterations;
    s.stats.spf_passes = r.spf_passes;
    s.stats.launches = r.launches;
    s.stats.fixpoint_iters = r.fixpoint_iterations;
    if (r.has_cycle) {
        set_mean<M>(s, r.lambda);
        s.cycle_vertices = r.cycle_vertices;
    }
    return s;
}

template <class M> Solution run_tree(const Graph& g) {
    Solution s;
    const TreeResult<M> r = tree_solve<M>(g);
    s.stats.outer_iters = r.events;
    if (r.has_cycle) {
        set_mean<M>(s, r.lambda);
        s.cycle_vertices = r.cycle_vertices;
    }
    return s;
}

Solution run_lawler(const Graph& g, double epsilon) {
    Solution s;
    const LawlerResult r = lawler_solve(g, epsilon);
    s.stats.outer_iters = r.iterations;
    s.stats.spf_passes = r.iterations + r.exact_probes;
    if (r.has_cycle) {
        s.has_cycle = true;
        s.mu = r.mean;
        if (r.exact) {
            s.exact = true;
            s.mu_exact = r.mean_exact;
        }
        s.cycle_vertices = r.cycle_vertices;
    }
    return s;
}

Solution run_oracle_enum(const Graph& g) {
    Solution s;
    const EnumerationResult r = enumerate_cycle_means(g);
    if (!r.has_cycle())
        return s;
    s.has_cycle = true;
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.cycles.size(); ++i) {
        const bool better = r.exact ? r.cycles[i].mean_exact < r.cycles[best].mean_exact
                                    : r.cycles[i].mean < r.cycles[best].mean;
        if (better)
            best = i;
    }
    const CycleInfo& c = r.cycles[best];
    s.mu = r.exact ? c.mean_exact.to_double() : c.mean;
    if (r.exact) {
        s.exact = true;
        s.mu_exact = c.mean_exact;
    }
    for (EdgeId e : c.edges)
        s.cycle_vertices.push_back(g.fwd_source[e]);
    return s;
}

Solution run_oracle_dp(const Graph& g) {
    Solution s;
    const DpResult r = dp_min_cycle_mean(g);
    if (!r.has_cycle)
        return s;
    s.has_cycle = true;
    s.mu = r.mean;
    if (r.exact) {
        s.exact = true;
        s.mu_exact = r.mean_exact;
    }
    return s;
}

template <class M> Solution run_min(Engine& eng, const Graph& g, const SolveOptions& opt) {
    switch (opt.algo) {
    case Algo::HowardSeq:
        return run_howard_seq<M>(eng, g, opt);
    case Algo::HowardPar:
        return run_howard_par<M>(eng, g, opt);
    case Algo::Tree:
        return run_tree<M>(g);
    case Algo::Lawler:
        return run_lawler(g, opt.epsilon);
    case Algo::OracleEnum:
        return run_oracle_enum(g);
    case Algo::OracleDp:
        return run_oracle_dp(g);
    }
    throw std::invalid_argument("unknown algorithm");
}

} // namespace

Solution solve(const Graph& input, const SolveOptions& opt) {
    if (input.n == 0)
        return {};

    Graph negated;
    const bool maximize = opt.objective == Objective::Maximize;
    if (maximize)
        negated = negate_weights(input);
    const Graph& g = maximize ? negated : input;

    Engine eng(opt.engine);
    Solution s =
        g.integer_exact ? run_min<ExactMode>(eng, g, opt) : run_min<FloatMode>(eng, g, opt);

    if (maximize && s.has_cycle) {
        s.mu = -s.mu;
        if (s.exact)
            s.mu_exact = -s.mu_exact;
    }
    return s;
}

} // namespace ocm
