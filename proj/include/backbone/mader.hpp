#pragma once

#include <cstdint>
#include <vector>

#include "backbone/graph.hpp"

namespace backbone {

struct DenseWitness {
  std::vector<Vertex> subgraph_vertices;
  // Connectivity level verified on the witness by an independent check
  // before returning; at least the requested level.
  int verified_kappa = 0;
  // Vertex count after each descent stage; strictly decreasing, so it
  // doubles as a termination certificate.
  std::vector<int> descent_sizes;
};

// An ell-connected induced subgraph of g, guaranteed to exist whenever the
// average degree is at least 4*ell. Deterministic; the returned vertex set
// indexes into g.
DenseWitness dense_k_connected_subgraph(const Graph& g, int ell);

struct BipartiteDenseWitness {
  DenseWitness witness;
  Bipartition partition;  // covers exactly the witness vertices
};

// Bipartite ell-connected subgraph from average degree at least 8*ell:
// bipartize first (crossing edges keep at least half the total), then
// extract. The witness subgraph is the crossing-edge graph induced on the
// returned vertices, bipartite by the returned partition.
BipartiteDenseWitness bipartite_dense_k_connected_subgraph(const Graph& g,
                                                           int ell,
                                                           std::uint64_t seed);

}  // namespace backbone
