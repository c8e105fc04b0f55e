#include "backbone/oracle.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "backbone/error.hpp"
#include "backbone/rng.hpp"

namespace backbone {

namespace {

// Reachability over the compact vertex list with a removal mask.
// Returns the number of kept vertices reachable from the first kept one.
int reachable_count(const std::vector<std::vector<int>>& adj, std::uint32_t removed) {
  int n = static_cast<int>(adj.size());
  int start = -1;
  for (int i = 0; i < n; ++i)
    if (!(removed >> i & 1)) {
      start = i;
      break;
    }
  if (start < 0) return 0;
  std::uint32_t seen = 1u << start;
  std::vector<int> stack{start};
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!(removed >> w & 1) && !(seen >> w & 1)) {
        seen |= 1u << w;
        stack.push_back(w);
        ++count;
      }
  }
  return count;
}

// Compact 0..n-1 adjacency for a Graph (ids remapped by position).
std::vector<std::vector<int>> compact_adjacency(const Graph& g) {
  const auto& vs = g.vertices();
  std::vector<int> pos(g.ambient_size(), -1);
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) pos[vs[i]] = i;
  std::vector<std::vector<int>> adj(vs.size());
  for (int i = 0; i < static_cast<int>(vs.size()); ++i)
    for (Vertex w : g.neighbors(vs[i])) adj[i].push_back(pos[w]);
  return adj;
}

bool connected_after_removal(const std::vector<std::vector<int>>& adj, int n,
                             std::uint32_t removed, int removed_count) {
  int kept = n - removed_count;
  if (kept == 0) return true;
  return reachable_count(adj, removed) == kept;
}

int popcount32(std::uint32_t x) { return __builtin_popcount(x); }

}  // namespace

int brute_kappa(const Graph& g) {
  int n = g.vertex_count();
  require(n >= 1 && n <= 14, "brute_kappa handles 1 <= n <= 14");
  if (n == 1) return 0;
  auto adj = compact_adjacency(g);
  if (!connected_after_removal(adj, n, 0, 0)) return 0;
  // Try removal sets in increasing size; the first size that disconnects is
  // kappa. A connected non-complete graph always falls to size <= n-2.
  for (int r = 1; r <= n - 2; ++r) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (popcount32(mask) != r) continue;
      if (!connected_after_removal(adj, n, mask, r)) return r;
    }
  }
  return n - 1;
}

int brute_lambda(const Graph& g) {
  int n = g.vertex_count();
  require(n >= 2 && n <= 14, "brute_lambda handles 2 <= n <= 14");
  auto adj = compact_adjacency(g);
  int best = -1;
  // Every nontrivial shore (vertex 0's side fixed) gives a cut; lambda is the
  // minimum crossing count.
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::uint32_t shore = (mask << 1) | 1u;  // vertex 0 always inside
    if (shore == (1u << n) - 1) continue;
    int crossing = 0;
    for (int v = 0; v < n; ++v)
      for (int w : adj[v])
        if (v < w && ((shore >> v & 1) != (shore >> w & 1))) ++crossing;
    if (best < 0 || crossing < best) best = crossing;
  }
  return best;
}

bool exists_spanning_bipartite_k_connected(const Graph& g, int k) {
  int n = g.vertex_count();
  require(n >= 1 && n <= 18, "oracle handles 1 <= n <= 18");
  require(k >= 0, "negative k");
  if (n <= k) return false;
  if (k == 0) return true;  // the empty spanning subgraph is 0-connected
  auto adj = compact_adjacency(g);

  // For a fixed bipartition the best candidate is the full cross subgraph:
  // adding a bipartition-respecting edge never lowers connectivity. So only
  // 2^(n-1) candidates matter.
  std::vector<std::vector<int>> cross(n);
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::uint32_t side = mask << 1;  // vertex 0 stays on side 0
    for (int v = 0; v < n; ++v) {
      cross[v].clear();
      for (int w : adj[v])
        if ((side >> v & 1) != (side >> w & 1)) cross[v].push_back(w);
    }
    // Quick rejects: min degree and connectivity.
    bool viable = true;
    for (int v = 0; v < n && viable; ++v)
      if (static_cast<int>(cross[v].size()) < k) viable = false;
    if (!viable) continue;
    if (!connected_after_removal(cross, n, 0, 0)) continue;
    // Exhaustive: no removal set of size < k may disconnect the candidate.
    bool works = true;
    for (std::uint32_t rem = 0; rem < (1u << n) && works; ++rem) {
      int rc = popcount32(rem);
      if (rc == 0 || rc >= k) continue;
      if (!connected_after_removal(cross, n, rem, rc)) works = false;
    }
    if (works) return true;
  }
  return false;
}

namespace {

Graph gen_gnp(int n, Rational p, std::uint64_t seed) {
  require(n >= 0, "gnp needs n >= 0");
  require(p.num >= 0 && p.num <= p.den, "gnp needs p in [0,1]");
  Rng rng = Rng(seed).stream("gen/gnp");
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.below(static_cast<std::uint64_t>(p.den)) <
          static_cast<std::uint64_t>(p.num))
        es.push_back({u, v});
  return Graph(n, es);
}

Graph gen_complete(int n) {
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) es.push_back({u, v});
  return Graph(n, es);
}

Graph gen_complete_bipartite(int a, int b) {
  require(a >= 0 && b >= 0, "complete_bipartite needs nonnegative sides");
  std::vector<Edge> es;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) es.push_back({u, a + v});
  return Graph(a + b, es);
}

Graph gen_hypercube(int dim) {
  require(dim >= 0 && dim <= 20, "hypercube dimension out of range");
  int n = 1 << dim;
  std::vector<Edge> es;
  for (int v = 0; v < n; ++v)
    for (int bit = 0; bit < dim; ++bit)
      if (!(v >> bit & 1)) es.push_back({v, v | (1 << bit)});
  Graph g(n, es);
  ensure(g.edge_count() == static_cast<long long>(dim) * n / 2,
         "hypercube edge count off");
  return g;
}

Graph gen_random_regular(int n, int d, std::uint64_t seed) {
  require(n >= 0 && d >= 0 && d < n, "random_regular needs 0 <= d < n");
  require(n * d % 2 == 0, "random_regular needs n*d even");
  Rng rng = Rng(seed).stream("gen/regular");
  // Pairing model with rejection on loops and repeats.
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<int> stubs(static_cast<std::size_t>(n) * d);
    for (int i = 0; i < n * d; ++i) stubs[i] = i / d;
    rng.shuffle(stubs);
    std::vector<Edge> es;
    bool ok = true;
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      else {
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second) ok = false;
        else es.push_back(make_edge(u, v));
      }
    }
    if (!ok) continue;
    Graph g(n, es);
    for (Vertex v : g.vertices())
      ensure(g.degree(v) == d, "random_regular produced wrong degree");
    return g;
  }
  throw precondition_error("random_regular: rejection sampling failed; degree too dense");
}

// Circulant on m vertices with offsets 1..j is 2j-connected for m >= 2j+1,
// which gives a deterministic k-connected blob for any k <= 2j.
Graph gen_blob(int m, int k, int base) {
  int j = (k + 1) / 2;
  require(m >= 2 * j + 1, "blob too small for requested connectivity");
  std::vector<Edge> es;
  for (int i = 0; i < m; ++i)
    for (int off = 1; off <= j; ++off)
      es.push_back(make_edge(base + i, base + (i + off) % m));
  return Graph(base + m, es);  // caller re-homes the edges
}

Graph gen_two_blobs(int m1, int m2, int k, int bridges, std::uint64_t seed) {
  require(k >= 1, "two_blobs needs k >= 1");
  require(bridges >= 0 && bridges <= std::min(m1, m2),
          "bridge count exceeds blob size");
  Graph b1 = gen_blob(m1, k, 0);
  Graph b2 = gen_blob(m2, k, m1);
  std::vector<Edge> es = b1.edges();
  for (const Edge& e : b2.edges()) es.push_back(e);
  // Deterministic independent bridge: i-th edge joins vertex i to m1+i,
  // optionally shifted by the seed so distinct seeds vary the contact points.
  Rng rng = Rng(seed).stream("gen/two_blobs");
  int shift1 = m1 > 0 ? static_cast<int>(rng.below(m1)) : 0;
  int shift2 = m2 > 0 ? static_cast<int>(rng.below(m2)) : 0;
  for (int i = 0; i < bridges; ++i)
    es.push_back(make_edge((shift1 + i) % m1, m1 + (shift2 + i) % m2));
  return Graph(m1 + m2, es);
}

Graph gen_tree(int n, std::uint64_t seed) {
  require(n >= 0, "tree needs n >= 0");
  if (n <= 1) return Graph(n);
  Rng rng = Rng(seed).stream("gen/tree");
  // Random attachment: vertex i hangs off a uniform earlier vertex.
  std::vector<Edge> es;
  for (int i = 1; i < n; ++i)
    es.push_back(make_edge(i, static_cast<int>(rng.below(i))));
  Graph g(n, es);
  ensure(g.edge_count() == n - 1 && components(g).size() == 1,
         "tree generator produced a non-tree");
  return g;
}

}  // namespace

Graph generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::gnp:
      return gen_gnp(spec.n, spec.p, spec.seed);
    case Family::complete:
      return gen_complete(spec.n);
    case Family::complete_bipartite: {
      Graph g = gen_complete_bipartite(spec.a, spec.b);
      Bipartition sides;
      ensure(two_coloring(g, sides), "complete_bipartite not 2-colorable");
      return g;
    }
    case Family::hypercube:
      return gen_hypercube(spec.dim);
    case Family::random_regular:
      return gen_random_regular(spec.n, spec.degree, spec.seed);
    case Family::two_blobs_bridged:
      return gen_two_blobs(spec.blob1, spec.blob2, spec.blob_k, spec.bridges,
                           spec.seed);
    case Family::tree:
      return gen_tree(spec.n, spec.seed);
  }
  throw precondition_error("unknown generator family");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::gnp: return "gnp";
    case Family::complete: return "complete";
    case Family::complete_bipartite: return "complete_bipartite";
    case Family::hypercube: return "hypercube";
    case Family::random_regular: return "random_regular";
    case Family::two_blobs_bridged: return "two_blobs_bridged";
    case Family::tree: return "tree";
  }
  return "?";
}

bool family_from_name(const std::string& name, Family& out) {
  for (Family f : {Family::gnp, Family::complete, Family::complete_bipartite,
                   Family::hypercube, Family::random_regular,
                   Family::two_blobs_bridged, Family::tree}) {
    if (name == family_name(f)) {
      out = f;
      return true;
    }
  }
  return false;
}

}  // namespace backbone
