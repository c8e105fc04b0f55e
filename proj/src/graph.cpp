#include "backbone/graph.hpp"

#include <algorithm>
#include <bit>
#include <queue>

#include "backbone/error.hpp"
#include "backbone/rng.hpp"

namespace backbone {

int ceil_log2(std::int64_t n) {
  require(n >= 1, "ceil_log2 needs n >= 1");
  if (n == 1) return 0;
  return std::bit_width(static_cast<std::uint64_t>(n - 1));
}

Edge make_edge(Vertex a, Vertex b) {
  require(a != b, "self-loop is not an edge");
  return a < b ? Edge{a, b} : Edge{b, a};
}

static std::vector<Vertex> all_ids(int n) {
  std::vector<Vertex> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

Graph::Graph(int ambient_size) : Graph(ambient_size, all_ids(ambient_size), {}) {}

Graph::Graph(int ambient_size, std::span<const Edge> edges)
    : Graph(ambient_size, all_ids(ambient_size), edges) {}

Graph::Graph(int ambient_size, std::vector<Vertex> verts, std::span<const Edge> edges)
    : ambient_(ambient_size), verts_(std::move(verts)) {
  require(ambient_ >= 0, "negative ambient size");
  std::sort(verts_.begin(), verts_.end());
  verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
  present_.assign(ambient_, 0);
  for (Vertex v : verts_) {
    require(v >= 0 && v < ambient_, "vertex id out of range");
    present_[v] = 1;
  }
  adj_.assign(ambient_, {});
  for (const Edge& e : edges) add_edge_internal(e.u, e.v);
  for (Vertex v : verts_) {
    auto& nb = adj_[v];
    std::sort(nb.begin(), nb.end());
    auto dup = std::unique(nb.begin(), nb.end());
    nb.erase(dup, nb.end());
  }
  edge_count_ = 0;
  for (Vertex v : verts_) edge_count_ += static_cast<long long>(adj_[v].size());
  edge_count_ /= 2;
}

void Graph::add_edge_internal(Vertex a, Vertex b) {
  require(a != b, "self-loop is not an edge");
  require(has_vertex(a) && has_vertex(b), "edge endpoint is not a present vertex");
  adj_[a].push_back(b);
  adj_[b].push_back(a);
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  require(has_vertex(v), "neighbors of absent vertex");
  return adj_[v];
}

int Graph::degree(Vertex v) const {
  require(has_vertex(v), "degree of absent vertex");
  return static_cast<int>(adj_[v].size());
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (!has_vertex(a) || !has_vertex(b)) return false;
  const auto& nb = adj_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Vertex v : verts_)
    for (Vertex w : adj_[v])
      if (v < w) out.push_back({v, w});
  std::sort(out.begin(), out.end());
  return out;
}

int Graph::min_degree() const {
  require(!verts_.empty(), "min_degree of empty graph");
  int best = degree(verts_[0]);
  for (Vertex v : verts_) best = std::min(best, degree(v));
  return best;
}

bool Graph::is_complete() const {
  long long n = vertex_count();
  return edge_count_ == n * (n - 1) / 2;
}

Graph Graph::induced(std::span<const Vertex> s) const {
  for (Vertex v : s) require(has_vertex(v), "induced set has an out-of-range vertex");
  std::vector<Vertex> keep(s.begin(), s.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<char> in(ambient_, 0);
  for (Vertex v : keep) in[v] = 1;
  std::vector<Edge> es;
  for (Vertex v : keep)
    for (Vertex w : adj_[v])
      if (v < w && in[w]) es.push_back({v, w});
  return Graph(ambient_, std::move(keep), es);
}

Graph Graph::with_edges(std::span<const Edge> extra) const {
  std::vector<Edge> es = edges();
  es.insert(es.end(), extra.begin(), extra.end());
  return Graph(ambient_, verts_, es);
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  return g.induced(s);
}

Digraph::Digraph(int ambient_size) : Digraph(ambient_size, all_ids(ambient_size), {}) {}

Digraph::Digraph(int ambient_size, std::span<const Arc> arcs)
    : Digraph(ambient_size, all_ids(ambient_size), arcs) {}

Digraph::Digraph(int ambient_size, std::vector<Vertex> verts, std::span<const Arc> arcs)
    : ambient_(ambient_size), verts_(std::move(verts)) {
  require(ambient_ >= 0, "negative ambient size");
  std::sort(verts_.begin(), verts_.end());
  verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
  present_.assign(ambient_, 0);
  for (Vertex v : verts_) {
    require(v >= 0 && v < ambient_, "vertex id out of range");
    present_[v] = 1;
  }
  out_.assign(ambient_, {});
  for (const Arc& a : arcs) {
    require(a.from != a.to, "self-loop arc");
    require(has_vertex(a.from) && has_vertex(a.to), "arc endpoint is not present");
    out_[a.from].push_back(a.to);
  }
  arc_count_ = 0;
  for (Vertex v : verts_) {
    auto& nb = out_[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    arc_count_ += static_cast<long long>(nb.size());
  }
}

std::span<const Vertex> Digraph::out_neighbors(Vertex v) const {
  require(has_vertex(v), "out_neighbors of absent vertex");
  return out_[v];
}

int Digraph::out_degree(Vertex v) const {
  require(has_vertex(v), "out_degree of absent vertex");
  return static_cast<int>(out_[v].size());
}

int Digraph::min_out_degree() const {
  require(!verts_.empty(), "min_out_degree of empty digraph");
  int best = out_degree(verts_[0]);
  for (Vertex v : verts_) best = std::min(best, out_degree(v));
  return best;
}

bool Digraph::has_arc(Vertex a, Vertex b) const {
  if (!has_vertex(a) || !has_vertex(b)) return false;
  const auto& nb = out_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(static_cast<std::size_t>(arc_count_));
  for (Vertex v : verts_)
    for (Vertex w : out_[v]) out.push_back({v, w});
  std::sort(out.begin(), out.end());
  return out;
}

Digraph Digraph::induced(std::span<const Vertex> s) const {
  for (Vertex v : s) require(has_vertex(v), "induced set has an out-of-range vertex");
  std::vector<Vertex> keep(s.begin(), s.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<char> in(ambient_, 0);
  for (Vertex v : keep) in[v] = 1;
  std::vector<Arc> as;
  for (Vertex v : keep)
    for (Vertex w : out_[v])
      if (in[w]) as.push_back({v, w});
  return Digraph(ambient_, std::move(keep), as);
}

bool Bipartition::in_side_a(Vertex v) const {
  return std::binary_search(side_a.begin(), side_a.end(), v);
}

bool Bipartition::in_side_b(Vertex v) const {
  return std::binary_search(side_b.begin(), side_b.end(), v);
}

Graph underlying_graph(const Digraph& d) {
  std::vector<Edge> es;
  for (Vertex v : d.vertices())
    for (Vertex w : d.out_neighbors(v)) es.push_back(make_edge(v, w));
  return Graph(d.ambient_size(), d.vertices(), es);
}

Digraph symmetric_digraph(const Graph& g) {
  std::vector<Arc> as;
  for (Vertex v : g.vertices())
    for (Vertex w : g.neighbors(v)) as.push_back({v, w});
  return Digraph(g.ambient_size(), g.vertices(), as);
}

Rational average_degree(const Graph& g) {
  require(g.vertex_count() >= 1, "average degree of empty graph");
  return Rational(2 * g.edge_count(), g.vertex_count());
}

Graph cross_subgraph(const Graph& g, const Bipartition& p) {
  std::vector<char> side(g.ambient_size(), -1);
  std::size_t covered = 0;
  for (Vertex v : p.side_a) {
    require(g.has_vertex(v) && side[v] == -1, "bipartition does not partition V(g)");
    side[v] = 0;
    ++covered;
  }
  for (Vertex v : p.side_b) {
    require(g.has_vertex(v) && side[v] == -1, "bipartition does not partition V(g)");
    side[v] = 1;
    ++covered;
  }
  require(covered == g.vertices().size(), "bipartition does not partition V(g)");
  std::vector<Edge> es;
  for (Vertex v : g.vertices())
    for (Vertex w : g.neighbors(v))
      if (v < w && side[v] != side[w]) es.push_back({v, w});
  return Graph(g.ambient_size(), g.vertices(), es);
}

std::vector<std::vector<Vertex>> components(const Graph& g) {
  std::vector<char> seen(g.ambient_size(), 0);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex start : g.vertices()) {
    if (seen[start]) continue;
    std::vector<Vertex> comp;
    std::queue<Vertex> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool two_coloring(const Graph& g, Bipartition& out) {
  std::vector<char> color(g.ambient_size(), -1);
  for (Vertex start : g.vertices()) {
    if (color[start] != -1) continue;
    color[start] = 0;
    std::queue<Vertex> q;
    q.push(start);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = static_cast<char>(1 - color[v]);
          q.push(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  out.side_a.clear();
  out.side_b.clear();
  for (Vertex v : g.vertices())
    (color[v] == 0 ? out.side_a : out.side_b).push_back(v);
  return true;
}

}  // namespace backbone
