// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

// Command-line frontend: solve one graph, benchmark a set of graphs or a
// generated template sweep (CSV to stdout, medians over repeated runs), or
// write generated benchmark models to disk.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ocm/graph_io.hpp"
#include "ocm/model_gen.hpp"
#include "ocm/report.hpp"
#include "ocm/solve.hpp"

namespace {

struct SolverFlags {
    std::string algo = "howard";
    ocm::SolveOptions opt;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    static const std::map<std::string, ocm::Algo> algos{
        {"howard", ocm::Algo::HowardSeq},   {"howard-par", ocm::Algo::HowardPar},
        {"lawler", ocm::Algo::Lawler},      {"tree", ocm::Algo::Tree},
        {"oracle-enum", ocm::Algo::OracleEnum}, {"oracle-dp", ocm::Algo::OracleDp},
    };
    static const std::map<std::string, ocm::Objective> objectives{
        {"min", ocm::Objective::Minimize},
        {"max", ocm::Objective::Maximize},
    };
    static const std::map<std::string, ocm::SccStrategy> sccs{
        {"tarjan", ocm::SccStrategy::Tarjan},
        {"parallel", ocm::SccStrategy::Parallel},
        {"off", ocm::SccStrategy::Off},
    };
    static const std::map<std::string, ocm::Schedule> schedules{
        {"seq", ocm::Schedule::Seq},
        {"par", ocm::Schedule::Par},
        {"shuffle", ocm::Schedule::Shuffle},
    };
    cmd->add_option("--algo", f.algo, "Solver")
        ->check(CLI::IsMember(algos, CLI::ignore_case));
    cmd->add_option("--objective", f.opt.objective, "Optimize min or max cycle mean")
        ->transform(CLI::CheckedTransformer(objectives, CLI::ignore_case));
    cmd->add_option("--scc", f.opt.scc,
                    "Component decomposition for the policy-iteration lanes")
        ->transform(CLI::CheckedTransformer(sccs, CLI::ignore_case));
    cmd->add_option("--epsilon", f.opt.epsilon, "Bisection stop width (lawler)");
    cmd->add_option("--schedule", f.opt.engine.schedule, "Kernel execution order")
        ->transform(CLI::CheckedTransformer(schedules, CLI::ignore_case));
    cmd->add_option("--workers", f.opt.engine.workers,
                    "Worker threads for --schedule par (0 = hardware)");
    cmd->add_option("--seed", f.opt.engine.seed, "Seed for --schedule shuffle");
}

ocm::Algo algo_of(const std::string& name) {
    if (name == "howard")
        return ocm::Algo::HowardSeq;
    if (name == "howard-par")
        return ocm::Algo::HowardPar;
    if (name == "lawler")
        return ocm::Algo::Lawler;
    if (name == "tree")
        return ocm::Algo::Tree;
    if (name == "oracle-enum")
        return ocm::Algo::OracleEnum;
    if (name == "oracle-dp")
        return ocm::Algo::OracleDp;
    throw CLI::ValidationError("--algo", "unknown algorithm '" + name + "'");
}

const char* objective_name(ocm::Objective o) {
    return o == ocm::Objective::Maximize ? "max" : "min";
}

template <class F> double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

ocm::Scenario scenario_of(const std::string& tmpl) {
    if (tmpl == "server-free")
        return ocm::worker_scenario();
    if (tmpl == "server")
        return ocm::server_scenario();
    throw CLI::ValidationError("--template", "unknown template '" + tmpl + "'");
}

int cmd_solve(const std::string& path, SolverFlags& f, bool json) {
    const ocm::Graph g = ocm::read_graph_file(path);
    f.opt.algo = algo_of(f.algo);
    ocm::Solution s;
    const double ms = time_ms([&] { s = ocm::solve(g, f.opt); });
    const ocm::ReportContext ctx{path, f.algo, objective_name(f.opt.objective), g.n, g.m};
    if (json)
        std::cout << ocm::json_report(ctx, s);
    else
        std::cout << ocm::human_report(ctx, s, ms);
    return 0;
}

int cmd_bench(const std::vector<std::string>& inputs, const std::string& tmpl,
              const std::vector<std::uint32_t>& clients, const std::vector<std::string>& algos,
              unsigned repeat, SolverFlags& f) {
    if (inputs.empty() && tmpl.empty())
        throw CLI::ValidationError("bench", "need --inputs or --template");
    if (repeat == 0)
        throw CLI::ValidationError("--repeat", "must be at least 1");

    struct Item {
        std::string name;
        ocm::Graph graph;
    };
    std::vector<Item> items;
    for (const std::string& path : inputs)
        items.push_back({path, ocm::read_graph_file(path)});
    if (!tmpl.empty()) {
        if (clients.empty())
            throw CLI::ValidationError("--clients", "template sweep needs client counts");
        for (std::uint32_t k : clients) {
            ocm::GeneratedModel m = ocm::generate_model(scenario_of(tmpl), k);
            items.push_back({tmpl + "-c" + std::to_string(k), std::move(m.graph)});
        }
    }

    std::cout << ocm::csv_header() << "\n";
    for (const Item& item : items) {
        for (const std::string& algo : algos) {
            ocm::SolveOptions opt = f.opt;
            opt.algo = algo_of(algo);
            ocm::Solution s;
            std::vector<double> wall;
            wall.reserve(repeat);
            for (unsigned r = 0; r < repeat; ++r)
                wall.push_back(time_ms([&] { s = ocm::solve(item.graph, opt); }));
            const ocm::ReportContext ctx{item.name, algo, objective_name(opt.objective),
                                         item.graph.n, item.graph.m};
            std::cout << ocm::csv_row(ctx, s, ocm::exact_median(wall)) << "\n";
        }
    }
    return 0;
}

int cmd_gen(const std::string& tmpl, const std::vector<std::uint32_t>& clients,
            const std::string& out) {
    const ocm::Scenario sc = scenario_of(tmpl);
    for (std::uint32_t k : clients) {
        std::string path = out;
        if (clients.size() > 1) {
            const std::filesystem::path p(out);
            path = (p.parent_path() /
                    (p.stem().string() + "-c" + std::to_string(k) + p.extension().string()))
                       .string();
        }
        const ocm::GeneratedModel m = ocm::generate_model(sc, k);
        ocm::write_edge_list(path, m.graph, ocm::model_comments(m));
        std::cout << path << ": n=" << m.graph.n << " m=" << m.graph.m << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal cycle mean solver toolkit"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one graph file");
    std::string solve_input;
    SolverFlags solve_flags;
    bool solve_json = false;
    solve->add_option("input", solve_input, "Graph file")->required();
    add_solver_flags(solve, solve_flags);
    solve->add_flag("--json", solve_json, "Machine-readable report (no timing)");

    // bench
    auto* bench = app.add_subcommand("bench", "Benchmark graphs or a template sweep (CSV)");
    std::vector<std::string> bench_inputs;
    std::string bench_tmpl;
    std::vector<std::uint32_t> bench_clients;
    std::vector<std::string> bench_algos{"howard"};
    unsigned bench_repeat = 10;
    SolverFlags bench_flags;
    bench->add_option("--inputs", bench_inputs, "Graph files")->delimiter(',');
    bench->add_option("--template", bench_tmpl, "Model template (server-free|server)");
    bench->add_option("--clients", bench_clients, "Client counts for the template sweep")
        ->delimiter(',');
    bench->add_option("--algos", bench_algos, "Solvers to run per graph")->delimiter(',');
    bench->add_option("--repeat", bench_repeat, "Runs per (graph, algo); wall_ms is the median");
    add_solver_flags(bench, bench_flags);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate benchmark model files");
    std::string gen_tmpl;
    std::vector<std::uint32_t> gen_clients;
    std::string gen_out;
    gen->add_option("--template", gen_tmpl, "Model template (server-free|server)")->required();
    gen->add_option("--clients", gen_clients, "Client counts (one file each)")
        ->delimiter(',')
        ->required();
    gen->add_option("--out", gen_out, "Output file (counts > 1 insert -c<k> before the extension)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve->parsed())
            return cmd_solve(solve_input, solve_flags, solve_json);
        if (bench->parsed())
            return cmd_bench(bench_inputs, bench_tmpl, bench_clients, bench_algos, bench_repeat,
                             bench_flags);
        return cmd_gen(gen_tmpl, gen_clients, gen_out);
    } catch (const ocm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
