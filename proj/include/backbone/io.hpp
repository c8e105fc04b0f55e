#pragma once

#include <iosfwd>
#include <string>

#include "backbone/graph.hpp"

namespace backbone {

// Edge-list text format:
//   - '#' starts a comment line; blank lines are ignored
//   - the first significant line is "n <vertex_count>"
//   - every further line is "u v" with 0 <= u,v < n, u != v
// Duplicate edges (or duplicate arcs) are rejected with the offending line.
// Digraphs use the same layout with "u v" read as the arc u->v.
Graph parse_graph(std::istream& in);
Digraph parse_digraph(std::istream& in);
Graph parse_graph_file(const std::string& path);
Digraph parse_digraph_file(const std::string& path);

std::string format_graph(const Graph& g);
std::string format_digraph(const Digraph& d);

}  // namespace backbone
