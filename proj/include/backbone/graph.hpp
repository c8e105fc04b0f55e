#pragma once

#include <span>
#include <vector>

#include "backbone/rational.hpp"

namespace backbone {

using Vertex = int;

// Unordered pair, normalized so u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

Edge make_edge(Vertex a, Vertex b);

// Simple undirected graph, an immutable value.
//
// Vertex ids are dense integers 0..ambient_size-1, but a Graph may hold only
// a subset of them: induced subgraphs keep the original ids via this
// present-set overlay, so pipeline bookkeeping never relabels anything.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int ambient_size);  // all of 0..n-1 present, no edges
  Graph(int ambient_size, std::span<const Edge> edges);
  // A graph on a chosen subset of the id space. Duplicate edges collapse.
  Graph(int ambient_size, std::vector<Vertex> verts, std::span<const Edge> edges);

  int ambient_size() const { return ambient_; }
  int vertex_count() const { return static_cast<int>(verts_.size()); }
  const std::vector<Vertex>& vertices() const { return verts_; }
  bool has_vertex(Vertex v) const {
    return v >= 0 && v < ambient_ && present_[v] != 0;
  }
  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const;
  long long edge_count() const { return edge_count_; }
  bool has_edge(Vertex a, Vertex b) const;
  std::vector<Edge> edges() const;  // sorted
  int min_degree() const;           // over present vertices; graph must be nonempty
  bool is_complete() const;

  // Subgraph induced by s (which must consist of present vertices).
  Graph induced(std::span<const Vertex> s) const;
  // Same vertex set, extra edges added (endpoints must be present).
  Graph with_edges(std::span<const Edge> extra) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void add_edge_internal(Vertex a, Vertex b);

  int ambient_ = 0;
  std::vector<Vertex> verts_;           // sorted present ids
  std::vector<char> present_;           // indexed by ambient id
  std::vector<std::vector<Vertex>> adj_;  // sorted neighbor lists
  long long edge_count_ = 0;
};

// Simple digraph over the same dense-id scheme; no self-loops, but both
// orientations of a pair may be present.
struct Arc {
  Vertex from = 0;
  Vertex to = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend bool operator<(const Arc& a, const Arc& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  }
};

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int ambient_size);
  Digraph(int ambient_size, std::span<const Arc> arcs);
  Digraph(int ambient_size, std::vector<Vertex> verts, std::span<const Arc> arcs);

  int ambient_size() const { return ambient_; }
  int vertex_count() const { return static_cast<int>(verts_.size()); }
  const std::vector<Vertex>& vertices() const { return verts_; }
  bool has_vertex(Vertex v) const {
    return v >= 0 && v < ambient_ && present_[v] != 0;
  }
  std::span<const Vertex> out_neighbors(Vertex v) const;
  int out_degree(Vertex v) const;
  int min_out_degree() const;  // digraph must be nonempty
  long long arc_count() const { return arc_count_; }
  bool has_arc(Vertex a, Vertex b) const;
  std::vector<Arc> arcs() const;  // sorted

  Digraph induced(std::span<const Vertex> s) const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  int ambient_ = 0;
  std::vector<Vertex> verts_;
  std::vector<char> present_;
  std::vector<std::vector<Vertex>> out_;
  long long arc_count_ = 0;
};

// Two-sided vertex partition; sides are sorted and disjoint.
struct Bipartition {
  std::vector<Vertex> side_a;
  std::vector<Vertex> side_b;

  bool in_side_a(Vertex v) const;
  bool in_side_b(Vertex v) const;
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

struct EdgeCut {
  std::vector<Vertex> separated_set;  // one shore of the cut
  std::vector<Edge> crossing_edges;
};

// Free-function forms of the core views.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> s);
Graph underlying_graph(const Digraph& d);
Digraph symmetric_digraph(const Graph& g);  // both arcs per edge
Rational average_degree(const Graph& g);    // exact 2|E|/|V|; |V| >= 1

// Spanning subgraph keeping exactly the edges with one endpoint per side.
// p must partition g's vertex set.
Graph cross_subgraph(const Graph& g, const Bipartition& p);

// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<Vertex>> components(const Graph& g);

// Proper 2-coloring if g is bipartite; sides sorted, deterministic
// (each component's smallest vertex goes to side_a).
bool two_coloring(const Graph& g, Bipartition& out);

}  // namespace backbone
