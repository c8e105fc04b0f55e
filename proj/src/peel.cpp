#include "backbone/peel.hpp"

#include <algorithm>
#include <tuple>

#include "backbone/connectivity.hpp"
#include "backbone/error.hpp"
#include "backbone/rng.hpp"

namespace backbone {

PeelResult peel_to_k_connected(const Digraph& d, int k) {
  require(k >= 1, "connectivity level must be positive");
  require(d.vertex_count() >= 1, "empty digraph");
  int n = d.vertex_count();
  int budget = (k - 1) * ceil_log2(n);
  require(d.min_out_degree() > budget,
          "min out-degree must exceed (k-1) * ceil(log2 n)");

  PeelResult out;
  Digraph cur = d;
  int max_steps = ceil_log2(n);

  while (true) {
    Graph u = underlying_graph(cur);
    if (is_k_connected(u, k).ok) break;
    ensure(static_cast<int>(out.trace.steps.size()) < max_steps,
           "peel exceeded its step bound");

    // Candidate minimum cuts; pick the one whose smallest component is
    // smallest, then lexicographically least component, then least cut.
    auto candidates = minimum_vertex_cuts(u);
    ensure(!candidates.empty(), "no cut candidates on a non-k-connected graph");
    const VertexCutWitness* best = &candidates.front();
    for (const auto& c : candidates) {
      auto key = [](const VertexCutWitness& w) {
        return std::tie(w.side_small, w.cut);
      };
      if (c.side_small.size() < best->side_small.size() ||
          (c.side_small.size() == best->side_small.size() &&
           key(c) < key(*best)))
        best = &c;
    }

    ensure(static_cast<int>(best->cut.size()) <= k - 1,
           "separator larger than k-1");
    ensure(2 * best->side_small.size() <=
               static_cast<std::size_t>(cur.vertex_count()),
           "chosen component above half the vertices");

    Digraph next = cur.induced(best->side_small);
    // Inside its component, a vertex can only have lost out-neighbors that
    // sat in the separator.
    for (Vertex v : next.vertices())
      ensure(cur.out_degree(v) - next.out_degree(v) <=
                 static_cast<int>(best->cut.size()),
             "out-degree dropped by more than the separator size");

    out.trace.steps.push_back({best->cut, best->side_small});
    cur = std::move(next);
  }

  for (Vertex v : cur.vertices())
    ensure(cur.out_degree(v) >= d.out_degree(v) - budget,
           "out-degree loss exceeded the budget");
  out.sub = std::move(cur);
  return out;
}

}  // namespace backbone
