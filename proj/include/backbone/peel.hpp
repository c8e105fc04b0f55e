#pragma once

#include <vector>

#include "backbone/graph.hpp"

namespace backbone {

struct PeelStep {
  std::vector<Vertex> separator;         // size <= k-1
  std::vector<Vertex> chosen_component;  // at most half the pre-step vertices
};

struct PeelTrace {
  std::vector<PeelStep> steps;  // at most ceil(log2 n) of them
};

struct PeelResult {
  Digraph sub;  // induced sub-digraph whose underlying graph is k-connected
  PeelTrace trace;
};

// Repeatedly delete a minimum vertex cut of the underlying graph and descend
// into the smallest remaining component until the underlying graph is
// k-connected. Requires min out-degree > (k-1) * ceil(log2 n); every
// surviving vertex keeps all but (k-1) * ceil(log2 n) of its original
// out-degree. Both postconditions are checked before returning.
PeelResult peel_to_k_connected(const Digraph& d, int k);

}  // namespace backbone
