#pragma once

#include <optional>
#include <vector>

#include "backbone/graph.hpp"

namespace backbone {

// A vertex set whose removal disconnects the graph, together with one
// component of the remainder (the smallest; ties broken toward the
// lexicographically least vertex list).
struct VertexCutWitness {
  std::vector<Vertex> cut;
  std::vector<Vertex> side_small;
};

struct ConnectivityResult {
  int kappa = 0;
  std::optional<VertexCutWitness> witness;  // absent exactly for complete graphs
};

struct KConnReport {
  bool ok = false;
  bool too_small = false;  // n <= k: no graph that small can qualify
  std::optional<VertexCutWitness> witness;  // cut of size < k when ok is false
};

struct Matching {
  std::vector<Edge> edges;  // pairwise vertex-disjoint
};

struct VertexCover {
  std::vector<Vertex> cover;
};

struct DisjointPaths {
  int count = 0;
  std::vector<std::vector<Vertex>> paths;  // each runs s..t, internally disjoint
};

struct EdgeConnectivityResult {
  int lambda = 0;
  EdgeCut cut;
};

struct MatchingResult {
  Matching matching;
  VertexCover cover;  // |cover| == |matching.edges| — checked on every call
};

// Maximum family of internally vertex-disjoint s-t paths. For non-adjacent
// s, t the count equals the minimum s-t vertex cut size (Menger).
DisjointPaths st_disjoint_paths(const Graph& g, Vertex s, Vertex t);

// Exact kappa. Witness present whenever kappa < n-1; complete graphs return
// n-1 with no witness (n = 1 gives 0); disconnected graphs return 0 with an
// empty cut and the smallest component.
ConnectivityResult vertex_connectivity(const Graph& g);

// Decision procedure: true iff n > k and no vertex set of size < k
// disconnects g. Flows are capped at k, so the cost scales with k rather
// than with kappa.
KConnReport is_k_connected(const Graph& g, int k);

// Exact lambda with a witnessing edge cut; requires n >= 2.
EdgeConnectivityResult edge_connectivity(const Graph& g);

// Maximum matching plus a vertex cover of equal size (Konig certificate).
// Every edge of g must cross the bipartition, and the sides must partition
// g's vertex set.
MatchingResult max_bipartite_matching(const Graph& g, const Bipartition& p);

// Deterministic collection of minimum vertex cuts found by the connectivity
// pair schedule, deduplicated and sorted by cut. Nonempty whenever
// kappa < n-1; a disconnected graph yields the single empty cut; complete
// graphs yield an empty list.
std::vector<VertexCutWitness> minimum_vertex_cuts(const Graph& g);

}  // namespace backbone
