#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flagbound/hypergraph.hpp"

namespace flagbound {

// Hypergraph text format (vertices 1-based on disk):
//
//   # comment
//   3 4          <- r n
//   1 2 3        <- one edge per line
//   1 2 4
//   ---          <- separates graphs in a multi-graph file
//   3 5
//
// Blank lines and '#' comments are ignored.

std::vector<Hypergraph> read_hypergraphs(std::istream& in);
std::vector<Hypergraph> read_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
void write_hypergraphs(std::ostream& out, std::span<const Hypergraph> graphs);

/// Single-line form used inside certificates and option values:
/// "r n : 1 2 3, 1 2 4" (the edge part may be empty).
std::string format_inline(const Hypergraph& h);
Hypergraph parse_inline(std::string_view text);

std::string read_file(const std::string& path);
std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace flagbound
