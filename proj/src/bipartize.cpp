#include "backbone/bipartize.hpp"

#include <algorithm>

#include "backbone/error.hpp"
#include "backbone/rational.hpp"
#include "backbone/rng.hpp"

namespace backbone {

namespace {

// Working state: side flag per ambient id plus per-vertex counts of
// same-side and cross-side neighbors, kept consistent under flips.
struct CutState {
  const Graph& g;
  std::vector<char> side;        // 0 or 1, indexed by ambient id
  std::vector<int> same, cross;  // neighbor counts by side agreement
  long long cut_size = 0;

  CutState(const Graph& graph, const std::vector<char>& assignment)
      : g(graph),
        side(assignment),
        same(graph.ambient_size(), 0),
        cross(graph.ambient_size(), 0) {
    for (Vertex v : g.vertices())
      for (Vertex w : g.neighbors(v)) {
        if (side[v] == side[w]) ++same[v];
        else ++cross[v];
      }
    for (const Edge& e : g.edges())
      if (side[e.u] != side[e.v]) ++cut_size;
  }

  // Gain of moving v to the other side.
  int gain(Vertex v) const { return same[v] - cross[v]; }

  void flip(Vertex v) {
    cut_size += gain(v);
    side[v] = static_cast<char>(1 - side[v]);
    std::swap(same[v], cross[v]);
    for (Vertex w : g.neighbors(v)) {
      if (side[v] == side[w]) {
        ++same[w];
        --cross[w];
      } else {
        --same[w];
        ++cross[w];
      }
    }
  }

  // Repeated index-order passes of strictly improving single moves.
  long long stabilize() {
    long long moves = 0;
    bool moved = true;
    while (moved) {
      moved = false;
      for (Vertex v : g.vertices())
        if (gain(v) > 0) {
          flip(v);
          ++moves;
          moved = true;
        }
    }
    return moves;
  }

  // Net gain of flipping the whole subset at once: edges with exactly one
  // endpoint inside toggle their crossing status.
  long long subset_gain(const std::vector<char>& in_subset) const {
    long long delta = 0;
    for (const Edge& e : g.edges()) {
      if (in_subset[e.u] == in_subset[e.v]) continue;
      delta += (side[e.u] == side[e.v]) ? 1 : -1;
    }
    return delta;
  }
};

std::vector<char> random_balanced_assignment(const Graph& g, Rng& rng) {
  std::vector<Vertex> order = g.vertices();
  rng.shuffle(order);
  std::vector<char> side(g.ambient_size(), 0);
  std::size_t half = (order.size() + 1) / 2;
  for (std::size_t i = half; i < order.size(); ++i) side[order[i]] = 1;
  return side;
}

LocalMaxCut pack_result(const Graph& g, const CutState& st, long long moves) {
  LocalMaxCut out;
  for (Vertex v : g.vertices()) {
    if (st.side[v] == 0) out.partition.side_a.push_back(v);
    else out.partition.side_b.push_back(v);
  }
  out.cut_size = st.cut_size;
  out.moves_performed = moves;

  long long check = 0;
  for (const Edge& e : g.edges())
    if (st.side[e.u] != st.side[e.v]) ++check;
  ensure(check == out.cut_size, "cut size bookkeeping off");
  for (Vertex v : g.vertices())
    ensure(st.gain(v) <= 0, "single-vertex move still improves the cut");
  ensure(2 * out.cut_size >= g.edge_count(), "cut below half the edges");
  return out;
}

}  // namespace

LocalMaxCut local_max_cut(const Graph& g, std::uint64_t seed, FlipMode mode,
                          int subset_rounds) {
  if (g.vertex_count() == 0) return {};

  if (mode == FlipMode::exhaustive) {
    int n = g.vertex_count();
    require(n <= 24, "exhaustive mode is limited to 24 vertices");
    const auto& vs = g.vertices();
    std::vector<char> best(g.ambient_size(), 0), cur(g.ambient_size(), 0);
    long long best_cut = -1;
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
      for (int i = 1; i < n; ++i) cur[vs[i]] = static_cast<char>(mask >> (i - 1) & 1);
      long long cut = 0;
      for (const Edge& e : g.edges())
        if (cur[e.u] != cur[e.v]) ++cut;
      if (cut > best_cut) {
        best_cut = cut;
        best = cur;
      }
    }
    CutState st(g, best);
    return pack_result(g, st, 0);
  }

  Rng rng = Rng(seed).stream("bipartize");
  CutState st(g, random_balanced_assignment(g, rng));
  long long moves = st.stabilize();

  if (mode == FlipMode::flip_set) {
    std::vector<char> proposal(g.ambient_size(), 0);
    for (int round = 0; round < subset_rounds; ++round) {
      for (Vertex v : g.vertices()) proposal[v] = rng.coin() ? 1 : 0;
      if (st.subset_gain(proposal) > 0) {
        for (Vertex v : g.vertices())
          if (proposal[v]) st.flip(v);
        ++moves;
        moves += st.stabilize();
      }
    }
  }

  return pack_result(g, st, moves);
}

HalvedDegree halved_degree_subgraph(const Graph& g, std::uint64_t seed) {
  LocalMaxCut cut = local_max_cut(g, seed, FlipMode::flip1);
  HalvedDegree out{cross_subgraph(g, cut.partition), cut.partition};
  for (Vertex v : g.vertices())
    ensure(2 * out.subgraph.degree(v) >= g.degree(v),
           "vertex lost more than half its degree");
  ensure(out.subgraph.vertex_count() == g.vertex_count(),
         "halved subgraph not spanning");
  return out;
}

}  // namespace backbone
