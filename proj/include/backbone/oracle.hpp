#pragma once

#include <cstdint>
#include <string>

#include "backbone/graph.hpp"
#include "backbone/rational.hpp"

namespace backbone {

// Ground-truth reference routines. Everything here is written from scratch
// against the definitions (own reachability, exhaustive subset enumeration)
// and shares no machinery with the algorithms it referees.

// Exact vertex connectivity by exhaustive deletion; n <= 14.
int brute_kappa(const Graph& g);

// Exact edge connectivity by enumerating all nontrivial shores; n <= 14.
int brute_lambda(const Graph& g);

// Does g admit a spanning bipartite k-connected subgraph? Decided by trying
// every bipartition of V(g) (vertex 0's side fixed) and testing the full
// cross subgraph, which dominates every other subgraph of that bipartition.
// n <= 18.
bool exists_spanning_bipartite_k_connected(const Graph& g, int k);

// Seeded graph families for tests and the bench harness.
enum class Family {
  gnp,
  complete,
  complete_bipartite,
  hypercube,
  random_regular,
  two_blobs_bridged,
  tree,
};

struct GeneratorSpec {
  Family family = Family::gnp;
  int n = 0;            // gnp, complete, random_regular, tree
  int a = 0, b = 0;     // complete_bipartite sides
  int dim = 0;          // hypercube dimension
  int degree = 0;       // random_regular degree
  int blob1 = 0, blob2 = 0, blob_k = 0, bridges = 0;  // two_blobs_bridged
  Rational p{1, 2};     // gnp edge probability
  std::uint64_t seed = 0;
};

Graph generate(const GeneratorSpec& spec);

const char* family_name(Family f);
bool family_from_name(const std::string& name, Family& out);

}  // namespace backbone
