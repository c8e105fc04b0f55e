#pragma once

#include <cstdint>

#include "backbone/graph.hpp"

namespace backbone {

enum class FlipMode {
  flip1,       // single-vertex moves: guarantees per-vertex degree halving
  flip_set,    // flip1 plus seeded random subset-flip proposals
  exhaustive,  // global maximum over all bipartitions (small n only)
};

struct LocalMaxCut {
  Bipartition partition;
  long long cut_size = 0;
  long long moves_performed = 0;
};

// Bipartition under which no single vertex move strictly increases the
// number of crossing edges. Deterministic per seed; cut_size is at least
// half the edge count. flip_set additionally tries subset_rounds random
// subset flips; exhaustive scans every bipartition (vertex-0 side fixed)
// and is guarded to small graphs.
LocalMaxCut local_max_cut(const Graph& g, std::uint64_t seed,
                          FlipMode mode = FlipMode::flip1,
                          int subset_rounds = 256);

struct HalvedDegree {
  Graph subgraph;  // spanning, bipartite
  Bipartition partition;
};

// Spanning bipartite subgraph in which every vertex keeps at least half of
// its degree (rounded up) — the crossing edges of a flip1 local optimum.
HalvedDegree halved_degree_subgraph(const Graph& g, std::uint64_t seed);

}  // namespace backbone
