// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Two text formats are accepted.
//
//   problem-line format (1-based):
//       c <comment>
//       p ocm <n> <m>
//       a <u> <v> <w>        one line per arc, exactly m of them
//
//   plain edge list (0-based):
//       # <comment>
//       <u> <v> <w>          vertex count inferred as max id + 1
//
// A file whose first significant line starts with 'p' or 'c' is treated as
// the first format, anything else as an edge list.

#include <stdexcept>
#include <string>
#include <string_view>

#include "ocm/graph.hpp"

namespace ocm {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& source, int line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// Parses graph text; `source` names the origin in error messages.
Graph parse_graph_text(std::string_view text, const std::string& source);

// Reads and parses a file. Throws std::runtime_error if unreadable,
// ParseError on malformed content.
Graph read_graph_file(const std::string& path);

// Writes a plain edge list, prefixing one '#' comment line per entry of
// `comments` (passed without the leading '#').
void write_edge_list(const std::string& path, const Graph& g,
                     const std::vector<std::string>& comments);

} // namespace ocm
