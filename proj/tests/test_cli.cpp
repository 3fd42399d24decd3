// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

// End-to-end tests of the installed binary (path injected as OCM_CLI_PATH).

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "ocm/graph_io.hpp"
#include "ocm/report.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(OCM_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ocm-cli-test-" + std::to_string(getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p.string();
    }
};

// Two 2-cycles with means 3 and 3/2, bridged: min = 3/2, max = 3.
const char* kTwoComponent = "0 1 2\n1 0 4\n2 3 1\n3 2 2\n1 2 0\n";

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        n += c == '\n';
    return n;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("solve prints the exact optimum") {
    TempDir dir;
    const std::string f = dir.file("two_cycle.txt", "0 1 2\n1 0 4\n");
    const RunResult r = run_cli("solve " + f);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("mu_star = 3") != std::string::npos);
    CHECK(r.output.find("cycle: 0 1") != std::string::npos);
}

TEST_CASE("solve reports acyclic graphs") {
    TempDir dir;
    const std::string f = dir.file("dag.txt", "0 1 1\n0 2 2\n1 3 3\n2 3 -1\n");
    const RunResult r = run_cli("solve " + f);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("no cycle") != std::string::npos);
}

TEST_CASE("every solver lane agrees through the cli") {
    TempDir dir;
    const std::string f = dir.file("two_component.txt", kTwoComponent);
    const char* algos[] = {"howard", "howard-par", "lawler",
                           "tree",   "oracle-enum", "oracle-dp"};
    for (const char* algo : algos) {
        CAPTURE(algo);
        const RunResult r = run_cli("solve " + f + " --algo " + algo);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("mu_star = 3/2") != std::string::npos);
    }
}

TEST_CASE("objective and decomposition flags") {
    TempDir dir;
    const std::string f = dir.file("two_component.txt", kTwoComponent);
    SUBCASE("maximize picks the heavier cycle") {
        const RunResult r = run_cli("solve " + f + " --objective max");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("mu_star = 3") != std::string::npos);
    }
    SUBCASE("decomposition off still solves non-strongly-connected input") {
        const RunResult r = run_cli("solve " + f + " --scc off");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("mu_star = 3/2") != std::string::npos);
    }
    SUBCASE("parallel decomposition and shuffled schedule") {
        const RunResult r = run_cli("solve " + f +
                                    " --algo howard-par --scc parallel"
                                    " --schedule shuffle --seed 5");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("mu_star = 3/2") != std::string::npos);
    }
    SUBCASE("worker count flag parses") {
        const RunResult r =
            run_cli("solve " + f + " --algo howard-par --schedule par --workers 4");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("mu_star = 3/2") != std::string::npos);
    }
}

TEST_CASE("json reports are byte identical across runs") {
    TempDir dir;
    const std::string f = dir.file("two_component.txt", kTwoComponent);
    const RunResult a = run_cli("solve " + f + " --json");
    const RunResult b = run_cli("solve " + f + " --json");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"mu_star\": \"3/2\"") != std::string::npos);
}

TEST_CASE("malformed input exits 2 with the offending line") {
    TempDir dir;
    SUBCASE("short edge line") {
        const std::string f = dir.file("bad.txt", "0 1 2\n0 1\n");
        const RunResult r = run_cli("solve " + f);
        CHECK(r.exit_code == 2);
        CHECK(r.output.find(":2:") != std::string::npos);
    }
    SUBCASE("empty file") {
        const std::string f = dir.file("empty.txt", "");
        const RunResult r = run_cli("solve " + f);
        CHECK(r.exit_code == 2);
    }
    SUBCASE("missing file is an io error, not a parse error") {
        const RunResult r = run_cli("solve " + (dir.path / "nope.txt").string());
        CHECK(r.exit_code == 1);
    }
    SUBCASE("unknown algorithm is rejected at parse time") {
        const std::string f = dir.file("g.txt", "0 0 1\n");
        const RunResult r = run_cli("solve " + f + " --algo dijkstra");
        CHECK(r.exit_code != 0);
    }
    SUBCASE("a subcommand is required") {
        CHECK(run_cli("").exit_code != 0);
    }
}

TEST_CASE("gen writes parseable model files") {
    TempDir dir;
    SUBCASE("single count writes --out verbatim") {
        const std::string out = (dir.path / "w2.txt").string();
        const RunResult r =
            run_cli("gen --template server-free --clients 2 --out " + out);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("n=9 m=24") != std::string::npos);
        const ocm::Graph g = ocm::read_graph_file(out);
        CHECK(g.n == 9);
        CHECK(g.m == 24);
        std::ifstream in(out);
        std::string first;
        std::getline(in, first);
        CHECK(first == "# model worker clients=2");
    }
    SUBCASE("multiple counts insert -c<k> before the extension") {
        const std::string out = (dir.path / "s.txt").string();
        const RunResult r = run_cli("gen --template server --clients 1,2 --out " + out);
        CHECK(r.exit_code == 0);
        CHECK(fs::exists(dir.path / "s-c1.txt"));
        CHECK(fs::exists(dir.path / "s-c2.txt"));
        CHECK_FALSE(fs::exists(dir.path / "s.txt"));
        CHECK(ocm::read_graph_file((dir.path / "s-c1.txt").string()).n == 4);
        CHECK(ocm::read_graph_file((dir.path / "s-c2.txt").string()).n == 12);
    }
    SUBCASE("unknown template") {
        const std::string out = (dir.path / "x.txt").string();
        const RunResult r = run_cli("gen --template mesh --clients 1 --out " + out);
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("bench emits one csv row per graph and algorithm") {
    TempDir dir;
    const std::string f1 = dir.file("a.txt", "0 1 2\n1 0 4\n");
    const std::string f2 = dir.file("b.txt", kTwoComponent);
    const RunResult r = run_cli("bench --inputs " + f1 + "," + f2 +
                                " --algos howard,tree --repeat 2");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 5); // header + 2 graphs x 2 algos
    std::istringstream is(r.output);
    std::string header;
    std::getline(is, header);
    CHECK(header == ocm::csv_header());
    std::string row;
    std::size_t rows = 0;
    while (std::getline(is, row)) {
        ++rows;
        CHECK(row.find(rows <= 2 ? "3," : "3/2,") != std::string::npos);
    }
    CHECK(rows == 4);
}

TEST_CASE("bench sweeps a generated template") {
    const RunResult r = run_cli("bench --template server --clients 1,2"
                                " --algos howard-par --repeat 1 --objective max");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 3);
    CHECK(r.output.find("server-c1,4,5,") != std::string::npos);
    CHECK(r.output.find("server-c2,12,") != std::string::npos);
    CHECK(r.output.find("9/4") != std::string::npos);
    SUBCASE("bench without work is a usage error") {
        CHECK(run_cli("bench").exit_code == 2);
        CHECK(run_cli("bench --template server").exit_code == 2);
        CHECK(run_cli("bench --inputs x --repeat 0").exit_code != 0);
    }
}

TEST_SUITE_END();
