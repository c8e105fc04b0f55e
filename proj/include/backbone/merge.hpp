#pragma once

#include <span>
#include <utility>
#include <vector>

#include "backbone/connectivity.hpp"
#include "backbone/graph.hpp"

namespace backbone {

// Ordered tuple of building blocks: first the graph pieces, then the
// singleton vertices. All vertex sets pairwise disjoint; every graph piece
// is verified k-connected on construction.
class PieceTuple {
 public:
  PieceTuple(std::vector<Graph> graphs, std::vector<Vertex> singletons, int k);

  const std::vector<Graph>& graphs() const { return graphs_; }
  const std::vector<Vertex>& singletons() const { return singletons_; }
  int k() const { return k_; }
  int element_count() const {
    return static_cast<int>(graphs_.size() + singletons_.size());
  }
  // Vertices of element i: graphs first (0..t-1), then singletons.
  std::vector<Vertex> element_vertices(int i) const;
  // Element owning v, or -1.
  int element_of(Vertex v) const;

 private:
  std::vector<Graph> graphs_;
  std::vector<Vertex> singletons_;
  std::vector<int> owner_;  // by ambient id
  int k_ = 0;
};

// Blueprint for how the elements connect: a graph on element indices
// 0..t+s-1, verified k-connected on construction.
class PatternGraph {
 public:
  PatternGraph(Graph r, int k);
  const Graph& graph() const { return r_; }
  int k() const { return k_; }

 private:
  Graph r_;
  int k_ = 0;
};

struct FamilyMembershipReport {
  bool piece_edges_present = false;            // every piece edge is a host edge
  std::vector<Edge> missing_pattern_edges;     // pattern edges with no host edge
  std::vector<std::pair<int, int>> escape_deficits;  // (piece, achieved) below k
  bool all_clear() const {
    return piece_edges_present && missing_pattern_edges.empty() &&
           escape_deficits.empty();
  }
};

// Union of two disjoint k-connected graphs plus at least k independent
// bridge edges, one endpoint in each; the result is k-connected (checked).
Graph join_two(const Graph& g1, const Graph& g2, const Matching& bridge, int k);

// The three assembly conditions: (1) every piece edge appears in g, (2) each
// pattern edge is realized by at least one host edge between its elements,
// (3) every graph piece sends k independent edges to k distinct other
// elements. All-clear certifies that g is k-connected (checked separately by
// callers where affordable).
FamilyMembershipReport check_family_membership(const Graph& g,
                                               const PieceTuple& x,
                                               const PatternGraph& r, int k);

// Assemble a graph from the pieces plus a greedy selection of available
// cross-piece edges satisfying all three conditions; re-verified before
// return. Throws when the available edges cannot satisfy a condition.
Graph merge_components(const PieceTuple& x, const PatternGraph& r,
                       std::span<const Edge> available_edges, int k);

}  // namespace backbone
