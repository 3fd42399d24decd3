// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ocm/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ocm {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 0;

    // Next line, nullopt encoded as ok=false.
    bool next(std::string_view& out) {
        if (pos >= text.size())
            return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        out = text.substr(pos, end - pos);
        pos = end + 1;
        ++line;
        return true;
    }
};

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

long long parse_int(std::string_view tok, const std::string& src, int line, const char* what) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(src, line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    return v;
}

double parse_weight(std::string_view tok, const std::string& src, int line) {
    std::string buf(tok);
    char* end = nullptr;
    const double w = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || !std::isfinite(w))
        throw ParseError(src, line, "bad weight '" + buf + "'");
    return w;
}

Graph parse_problem_line_format(Cursor& cur, std::string_view first,
                                const std::string& src) {
    long long n = -1, m = -1;
    std::vector<EdgeInput> edges;
    std::string_view line = first;
    bool have = true;
    while (have) {
        auto toks = split_ws(line);
        if (!toks.empty()) {
            if (toks[0] == "c") {
                // comment
            } else if (toks[0] == "p") {
                if (n >= 0)
                    throw ParseError(src, cur.line, "duplicate problem line");
                if (toks.size() != 4 || toks[1] != "ocm")
                    throw ParseError(src, cur.line, "expected 'p ocm <n> <m>'");
                n = parse_int(toks[2], src, cur.line, "vertex count");
                m = parse_int(toks[3], src, cur.line, "arc count");
                if (n < 0 || m < 0)
                    throw ParseError(src, cur.line, "negative size in problem line");
            } else if (toks[0] == "a") {
                if (n < 0)
                    throw ParseError(src, cur.line, "arc before problem line");
                if (toks.size() != 4)
                    throw ParseError(src, cur.line, "expected 'a <u> <v> <w>'");
                const long long u = parse_int(toks[1], src, cur.line, "source");
                const long long v = parse_int(toks[2], src, cur.line, "target");
                if (u < 1 || u > n || v < 1 || v > n)
                    throw ParseError(src, cur.line, "arc endpoint out of range 1.." + std::to_string(n));
                edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1),
                                 parse_weight(toks[3], src, cur.line)});
            } else {
                throw ParseError(src, cur.line, "unknown line kind '" + std::string(toks[0]) + "'");
            }
        }
        have = cur.next(line);
    }
    if (n < 0)
        throw ParseError(src, cur.line, "missing problem line");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError(src, cur.line,
                         "arc count mismatch: header says " + std::to_string(m) + ", found " +
                             std::to_string(edges.size()));
    return build_graph(static_cast<Vertex>(n), edges);
}

Graph parse_edge_list_format(Cursor& cur, std::string_view first, const std::string& src) {
    std::vector<EdgeInput> edges;
    long long max_id = -1;
    std::string_view line = first;
    bool have = true;
    while (have) {
        auto toks = split_ws(line);
        if (!toks.empty() && toks[0][0] != '#') {
            if (toks.size() != 3)
                throw ParseError(src, cur.line, "expected '<u> <v> <w>'");
            const long long u = parse_int(toks[0], src, cur.line, "source");
            const long long v = parse_int(toks[1], src, cur.line, "target");
            if (u < 0 || v < 0)
                throw ParseError(src, cur.line, "negative vertex id");
            max_id = std::max({max_id, u, v});
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v),
                             parse_weight(toks[2], src, cur.line)});
        }
        have = cur.next(line);
    }
    if (edges.empty())
        throw ParseError(src, cur.line, "no edges in input");
    return build_graph(static_cast<Vertex>(max_id + 1), edges);
}

} // namespace

Graph parse_graph_text(std::string_view text, const std::string& source) {
    Cursor cur{text};
    std::string_view line;
    // Find the first significant line to pick the format.
    while (cur.next(line)) {
        auto toks = split_ws(line);
        if (toks.empty())
            continue;
        if (toks[0] == "p" || toks[0] == "c")
            return parse_problem_line_format(cur, line, source);
        return parse_edge_list_format(cur, line, source);
    }
    throw ParseError(source, cur.line, "empty input");
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph_text(buf.str(), path);
}

void write_edge_list(const std::string& path, const Graph& g,
                     const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    for (const std::string& c : comments)
        out << "# " << c << "\n";
    char wbuf[64];
    for (EdgeId e = 0; e < g.m; ++e) {
        const double w = g.fwd_weight[e];
        if (g.integer_exact)
            std::snprintf(wbuf, sizeof wbuf, "%lld", static_cast<long long>(w));
        else
            std::snprintf(wbuf, sizeof wbuf, "%.17g", w);
        out << g.fwd_source[e] << ' ' << g.fwd_target[e] << ' ' << wbuf << '\n';
    }
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace ocm
