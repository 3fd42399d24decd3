// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "ocm/graph_io.hpp"
#include "support/test_graphs.hpp"

using namespace ocm;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("ocm_io_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

} // namespace

TEST_SUITE_BEGIN("graph_io");

TEST_CASE("problem line format parses 1-based arcs") {
    const Graph g = parse_graph_text("c a comment\n"
                                     "p ocm 3 3\n"
                                     "a 1 2 5\n"
                                     "a 2 3 -2\n"
                                     "\n"
                                     "a 3 1 0\n",
                                     "mem");
    REQUIRE(g.n == 3);
    REQUIRE(g.m == 3);
    CHECK(g.fwd_source[0] == 0);
    CHECK(g.fwd_target[0] == 1);
    CHECK(g.fwd_weight[0] == 5);
    CHECK(g.fwd_weight[2] == 0);
    CHECK(g.integer_exact);
}

TEST_CASE("plain edge list is 0-based with inferred size") {
    const Graph g = parse_graph_text("# header\n0 1 2.5\n1 0 -1\n", "mem");
    REQUIRE(g.n == 2);
    REQUIRE(g.m == 2);
    CHECK(g.fwd_weight[0] == 2.5);
    CHECK_FALSE(g.integer_exact);
}

TEST_CASE("errors carry the line number") {
    try {
        parse_graph_text("p ocm 2 1\na 1 3 0\n", "mem");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_graph_text("p ocm 2 2\na 1 2 0\n", "mem"), ParseError); // count short
    CHECK_THROWS_AS(parse_graph_text("p ocm 2 0\na 1 2 0\n", "mem"), ParseError); // count long
    CHECK_THROWS_AS(parse_graph_text("p wrong 2 1\na 1 2 0\n", "mem"), ParseError);
    CHECK_THROWS_AS(parse_graph_text("a 1 2 0\n", "mem"), ParseError); // arc before p... edge list
    CHECK_THROWS_AS(parse_graph_text("0 1 zero\n", "mem"), ParseError);
    CHECK_THROWS_AS(parse_graph_text("0 1\n", "mem"), ParseError);
    CHECK_THROWS_AS(parse_graph_text("", "mem"), ParseError);
    CHECK_THROWS_AS(parse_graph_text("p ocm 2 1\na 1 2 inf\n", "mem"), ParseError);
}

TEST_CASE("file round trip preserves the graph") {
    TempDir tmp;
    const Graph g = testing::two_component_graph();
    const std::string path = tmp.file("roundtrip.txt");
    write_edge_list(path, g, {"fixture", "two components"});

    const std::string text = slurp(path);
    CHECK(text.rfind("# fixture\n# two components\n", 0) == 0);

    const Graph back = read_graph_file(path);
    REQUIRE(back.n == g.n);
    REQUIRE(back.m == g.m);
    CHECK(back.fwd_source == g.fwd_source);
    CHECK(back.fwd_target == g.fwd_target);
    CHECK(back.fwd_weight == g.fwd_weight);
    CHECK(back.integer_exact == g.integer_exact);
}

TEST_CASE("float weights round trip exactly through %.17g") {
    TempDir tmp;
    const Graph g = build_graph(2, {{0, 1, 0.1}, {1, 0, 1.0 / 3.0}});
    const std::string path = tmp.file("float.txt");
    write_edge_list(path, g, {});
    const Graph back = read_graph_file(path);
    CHECK(back.fwd_weight == g.fwd_weight);
}

TEST_CASE("missing file reports a readable error") {
    CHECK_THROWS_AS(read_graph_file("/nonexistent/ocm/file.txt"), std::runtime_error);
}

TEST_SUITE_END();
