#include "backbone/pipeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "backbone/bipartize.hpp"
#include "backbone/connectivity.hpp"
#include "backbone/error.hpp"
#include "backbone/mader.hpp"
#include "backbone/merge.hpp"

namespace backbone {

namespace {

long long scaled(Rational scale, long long x) {
  std::int64_t c = (scale * Rational(x)).ceil();
  return c < 1 ? 1 : c;
}

PipelineConfig config_from(int k, int n, std::uint64_t seed, Rational scale) {
  require(k >= 1, "connectivity target must be positive");
  require(n >= 1, "config needs a positive vertex count");
  require(scale > Rational(0), "scale must be positive");
  long long kk = k;
  long long level = std::max(1, ceil_log2(n));
  PipelineConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  cfg.scale = scale;
  cfg.size_threshold = scaled(scale, 1000 * kk * kk * level);
  cfg.matching_target = scaled(scale, 1000 * kk * kk * level);
  cfg.degree_split_threshold = scaled(scale, 10000 * kk * kk * kk * level);
  cfg.thinned_size = scaled(scale, 250 * kk * level);
  cfg.touch_threshold = scaled(scale, 120 * kk * level);
  cfg.a_distinct_threshold = scaled(scale, 2000 * kk * kk * level);
  cfg.b_degree_threshold = scaled(scale, 100000 * kk * kk * kk * level);
  return cfg;
}

std::vector<Vertex> merge_sorted(const std::vector<Vertex>& a,
                                 const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int edges_into(const Graph& g, Vertex v, const std::vector<Vertex>& side) {
  int c = 0;
  for (Vertex w : g.neighbors(v))
    if (std::binary_search(side.begin(), side.end(), w)) ++c;
  return c;
}

void insert_sorted(std::vector<Vertex>& v, Vertex x) {
  v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

void check_piece(const Graph& g, const Piece& p, int k, const char* what) {
  ensure(is_k_connected(piece_graph(g, p), k).ok, what);
}

struct TrackedPiece {
  Piece p;
  bool keep = false;  // survives the size filter regardless of size
};

std::vector<int> owner_map(const Graph& g,
                           const std::vector<TrackedPiece>& ps) {
  std::vector<int> owner(g.ambient_size(), -1);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (Vertex v : ps[i].p.vertices) owner[v] = static_cast<int>(i);
  return owner;
}

bool absorb_pass(const Graph& g, std::vector<TrackedPiece>& ps, int k) {
  bool changed = false;
  std::vector<int> owner = owner_map(g, ps);
  for (Vertex v : g.vertices()) {
    if (owner[v] != -1) continue;
    for (auto& tp : ps) {
      if (edges_into(g, v, tp.p.sides.side_a) >= k) {
        insert_sorted(tp.p.sides.side_b, v);
      } else if (edges_into(g, v, tp.p.sides.side_b) >= k) {
        insert_sorted(tp.p.sides.side_a, v);
      } else {
        continue;
      }
      insert_sorted(tp.p.vertices, v);
      check_piece(g, tp.p, k, "absorbed vertex broke piece connectivity");
      changed = true;
      break;
    }
  }
  return changed;
}

// Maximum matching between two disjoint sorted vertex sets using host edges.
MatchingResult side_matching(const Graph& g, const std::vector<Vertex>& xs,
                             const std::vector<Vertex>& ys) {
  std::vector<Edge> es;
  for (Vertex u : xs)
    for (Vertex w : g.neighbors(u))
      if (std::binary_search(ys.begin(), ys.end(), w))
        es.push_back(make_edge(u, w));
  Graph bip(g.ambient_size(), merge_sorted(xs, ys), es);
  return max_bipartite_matching(bip, Bipartition{xs, ys});
}

bool merge_pass(const Graph& g, std::vector<TrackedPiece>& ps, int k) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const Piece& pi = ps[i].p;
      const Piece& pj = ps[j].p;
      const std::vector<Vertex>* si[2] = {&pi.sides.side_a, &pi.sides.side_b};
      const std::vector<Vertex>* sj[2] = {&pj.sides.side_a, &pj.sides.side_b};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          MatchingResult mr = side_matching(g, *si[a], *sj[b]);
          if (static_cast<long long>(mr.matching.edges.size()) < k) continue;
          std::vector<Edge> bridge = mr.matching.edges;
          std::sort(bridge.begin(), bridge.end());
          bridge.resize(k);
          join_two(piece_graph(g, pi), piece_graph(g, pj), Matching{bridge},
                   k);
          // The matched side of pj goes opposite the matched side of pi.
          int qa = a ^ b ^ 1;
          Piece merged;
          merged.vertices = merge_sorted(pi.vertices, pj.vertices);
          merged.sides.side_a = merge_sorted(pi.sides.side_a, *sj[qa]);
          merged.sides.side_b = merge_sorted(pi.sides.side_b, *sj[1 - qa]);
          check_piece(g, merged, k, "merged pieces broke connectivity");
          bool keep = ps[i].keep || ps[j].keep;
          ps[i] = TrackedPiece{std::move(merged), keep};
          ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(j));
          return true;
        }
    }
  return false;
}

void run_fixpoint(const Graph& g, std::vector<TrackedPiece>& ps, int k) {
  bool changed = true;
  while (changed) {
    changed = absorb_pass(g, ps, k);
    if (merge_pass(g, ps, k)) changed = true;
  }
}

std::vector<Vertex> k_core_vertices(const Graph& g, int k) {
  std::vector<char> alive(g.ambient_size(), 0);
  std::vector<int> deg(g.ambient_size(), 0);
  for (Vertex v : g.vertices()) {
    alive[v] = 1;
    deg[v] = g.degree(v);
  }
  std::vector<Vertex> dead;
  for (Vertex v : g.vertices())
    if (deg[v] < k) {
      alive[v] = 0;
      dead.push_back(v);
    }
  while (!dead.empty()) {
    Vertex v = dead.back();
    dead.pop_back();
    for (Vertex w : g.neighbors(v))
      if (alive[w] && --deg[w] < k) {
        alive[w] = 0;
        dead.push_back(w);
      }
  }
  std::vector<Vertex> out;
  for (Vertex v : g.vertices())
    if (alive[v]) out.push_back(v);
  return out;
}

Bipartition restrict_partition(const Bipartition& p,
                               const std::vector<Vertex>& s) {
  Bipartition out;
  for (Vertex v : s)
    (p.in_side_a(v) ? out.side_a : out.side_b).push_back(v);
  return out;
}

// One new piece from the leftover components, largest first: the whole
// component when it is bipartite and k-connected, a dense extraction when
// the average degree supports one, or a k-core of a local-max-cut crossing
// graph split along its small cuts.
std::optional<Piece> scan_for_piece(const Graph& g,
                                    const std::vector<TrackedPiece>& ps,
                                    const PipelineConfig& cfg, int round) {
  int k = cfg.k;
  std::vector<int> owner = owner_map(g, ps);
  std::vector<Vertex> leftover;
  for (Vertex v : g.vertices())
    if (owner[v] == -1) leftover.push_back(v);
  if (leftover.empty()) return std::nullopt;

  Graph lg = induced_subgraph(g, leftover);
  std::vector<std::vector<Vertex>> comps = components(lg);
  std::stable_sort(comps.begin(), comps.end(),
                   [](const std::vector<Vertex>& a,
                      const std::vector<Vertex>& b) {
                     return a.size() > b.size();
                   });

  for (const std::vector<Vertex>& comp : comps) {
    if (static_cast<int>(comp.size()) <= k) continue;
    Graph h = lg.induced(comp);

    Bipartition coloring;
    bool bip = two_coloring(h, coloring);
    if (bip && is_k_connected(h, k).ok) return Piece{comp, coloring};

    std::uint64_t comp_seed =
        Rng(cfg.seed)
            .stream("extract/flip/" + std::to_string(round) + "/" +
                    std::to_string(comp.front()))
            .base_seed();

    if (average_degree(h) >= Rational(8LL * k)) {
      BipartiteDenseWitness bd =
          bipartite_dense_k_connected_subgraph(h, k, comp_seed);
      return Piece{bd.witness.subgraph_vertices, bd.partition};
    }

    Bipartition split =
        bip ? coloring : local_max_cut(h, comp_seed).partition;
    Graph cross = cross_subgraph(h, split);
    std::vector<Vertex> core = k_core_vertices(cross, k);
    if (static_cast<int>(core.size()) <= k) continue;

    std::set<std::vector<Vertex>> seen;
    std::vector<std::vector<Vertex>> stack{core};
    int work = 0;
    while (!stack.empty() && work < 512) {
      std::vector<Vertex> w = std::move(stack.back());
      stack.pop_back();
      if (!seen.insert(w).second) continue;
      ++work;
      Graph cand = cross.induced(w);
      std::vector<Vertex> trimmed = k_core_vertices(cand, k);
      if (static_cast<int>(trimmed.size()) <= k) continue;
      if (trimmed.size() != w.size()) cand = cand.induced(trimmed);
      KConnReport rep = is_k_connected(cand, k);
      if (rep.ok) return Piece{trimmed, restrict_partition(split, trimmed)};
      ensure(rep.witness.has_value(),
             "k-connectivity failure without a witness");
      std::vector<Vertex> rest;
      std::set_difference(trimmed.begin(), trimmed.end(),
                          rep.witness->cut.begin(), rep.witness->cut.end(),
                          std::back_inserter(rest));
      for (const std::vector<Vertex>& c : components(cand.induced(rest))) {
        std::vector<Vertex> next = merge_sorted(c, rep.witness->cut);
        if (static_cast<int>(next.size()) > k && !seen.count(next))
          stack.push_back(std::move(next));
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PipelineConfig PipelineConfig::full_scale(int k, int n, std::uint64_t seed) {
  return config_from(k, n, seed, Rational(1));
}

PipelineConfig PipelineConfig::desk(int k, int n, std::uint64_t seed) {
  require(k >= 1, "connectivity target must be positive");
  require(n >= 1, "config needs a positive vertex count");
  long long kk = k;
  long long level = std::max(1, ceil_log2(n));
  long long target = std::max(2 * kk + 2, static_cast<long long>(n) / 8);
  return config_from(k, n, seed, Rational(target, 1000 * kk * kk * level));
}

PipelineConfig PipelineConfig::at_scale(int k, int n, std::uint64_t seed,
                                        Rational scale) {
  return config_from(k, n, seed, scale);
}

Graph piece_graph(const Graph& host, const Piece& p) {
  std::vector<Edge> cross;
  for (Vertex u : p.sides.side_a)
    for (Vertex w : host.neighbors(u))
      if (p.sides.in_side_b(w)) cross.push_back(make_edge(u, w));
  return Graph(host.ambient_size(), p.vertices, cross);
}

std::vector<Piece> augment_fixpoint(const Graph& g, std::vector<Piece> pieces,
                                    int k) {
  require(k >= 1, "connectivity target must be positive");
  std::vector<TrackedPiece> ps;
  ps.reserve(pieces.size());
  for (Piece& p : pieces) ps.push_back(TrackedPiece{std::move(p), false});
  run_fixpoint(g, ps, k);
  std::vector<Piece> out;
  out.reserve(ps.size());
  for (TrackedPiece& tp : ps) out.push_back(std::move(tp.p));
  return out;
}

void assert_claim_fixpoint(const Graph& g, const std::vector<Piece>& pieces,
                           int k) {
  std::vector<char> covered(g.ambient_size(), 0);
  for (const Piece& p : pieces)
    for (Vertex v : p.vertices) covered[v] = 1;
  for (Vertex v : g.vertices()) {
    if (covered[v]) continue;
    for (const Piece& p : pieces) {
      ensure(edges_into(g, v, p.sides.side_a) < k,
             "leftover vertex can still join a piece");
      ensure(edges_into(g, v, p.sides.side_b) < k,
             "leftover vertex can still join a piece");
    }
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      const std::vector<Vertex>* si[2] = {&pieces[i].sides.side_a,
                                          &pieces[i].sides.side_b};
      const std::vector<Vertex>* sj[2] = {&pieces[j].sides.side_a,
                                          &pieces[j].sides.side_b};
      for (const auto* x : si)
        for (const auto* y : sj)
          ensure(static_cast<long long>(
                     side_matching(g, *x, *y).matching.edges.size()) < k,
                 "piece pair can still merge");
    }
}

std::vector<Piece> extract_pieces(const Graph& g, const PipelineConfig& cfg,
                                  std::vector<Piece> seeds, int round) {
  require(cfg.k >= 1, "connectivity target must be positive");
  require(g.vertex_count() >= 1, "empty graph");
  std::vector<char> covered(g.ambient_size(), 0);
  std::vector<TrackedPiece> ps;
  ps.reserve(seeds.size());
  for (Piece& s : seeds) {
    require(merge_sorted(s.sides.side_a, s.sides.side_b) == s.vertices,
            "seed sides must partition its vertices");
    for (Vertex v : s.vertices) {
      require(g.has_vertex(v), "seed vertex outside the graph");
      require(!covered[v], "seed pieces overlap");
      covered[v] = 1;
    }
    require(is_k_connected(piece_graph(g, s), cfg.k).ok,
            "seed piece is not k-connected");
    ps.push_back(TrackedPiece{std::move(s), true});
  }

  run_fixpoint(g, ps, cfg.k);
  while (std::optional<Piece> np = scan_for_piece(g, ps, cfg, round)) {
    check_piece(g, *np, cfg.k, "scanned piece is not k-connected");
    ps.push_back(TrackedPiece{std::move(*np), false});
    run_fixpoint(g, ps, cfg.k);
  }

  // Pieces that never merged into a seed and stayed small are noise; drop
  // them and let their vertices re-attach to what remains. Dropped pieces
  // are not rescanned — a rescan would just rebuild them.
  while (true) {
    bool dropped = false;
    for (auto it = ps.begin(); it != ps.end();) {
      if (!it->keep && static_cast<long long>(it->p.vertices.size()) <
                           cfg.size_threshold) {
        it = ps.erase(it);
        dropped = true;
      } else {
        ++it;
      }
    }
    if (!dropped) break;
    run_fixpoint(g, ps, cfg.k);
  }

  std::vector<Piece> out;
  out.reserve(ps.size());
  for (TrackedPiece& tp : ps) out.push_back(std::move(tp.p));
  assert_claim_fixpoint(g, out, cfg.k);
  return out;
}

ElementMap make_element_map(const Graph& g, const std::vector<Piece>& pieces) {
  ElementMap em;
  em.piece_count = static_cast<int>(pieces.size());
  em.element_of.assign(g.ambient_size(), -1);
  for (int i = 0; i < em.piece_count; ++i)
    for (Vertex v : pieces[i].vertices) em.element_of[v] = i;
  for (Vertex v : g.vertices())
    if (em.element_of[v] == -1) {
      em.element_of[v] =
          em.piece_count + static_cast<int>(em.singleton_vertices.size());
      em.singleton_vertices.push_back(v);
    }
  return em;
}

EscapeOutcome escape_matching(const Graph& g, const std::vector<Piece>& pieces,
                              int piece_index, long long target) {
  require(piece_index >= 0 &&
              piece_index < static_cast<int>(pieces.size()),
          "piece index out of range");
  require(target >= 1, "escape target must be positive");
  const std::vector<Vertex>& inside = pieces[piece_index].vertices;
  std::vector<Edge> es;
  std::set<Vertex> boundary;
  for (Vertex u : inside)
    for (Vertex w : g.neighbors(u))
      if (!std::binary_search(inside.begin(), inside.end(), w)) {
        es.push_back(make_edge(u, w));
        boundary.insert(w);
      }
  std::vector<Vertex> outside(boundary.begin(), boundary.end());
  Graph bip(g.ambient_size(), merge_sorted(inside, outside), es);
  MatchingResult mr = max_bipartite_matching(bip, Bipartition{inside, outside});

  EscapeOutcome out;
  out.matching = mr.matching.edges;
  std::sort(out.matching.begin(), out.matching.end());
  if (static_cast<long long>(out.matching.size()) >= target) {
    out.matching.resize(target);
    out.reached = true;
  } else {
    out.cover = mr.cover.cover;
  }
  return out;
}

ThinOutcome thin_matching(const ElementMap& em, int piece_index,
                          std::span<const Edge> matching, long long want) {
  require(want >= 1, "thinning target must be positive");
  std::map<int, Edge> least;  // outer element -> least matching edge
  for (const Edge& e : matching) {
    int eu = em.element_of[e.u];
    int ev = em.element_of[e.v];
    require(eu == piece_index || ev == piece_index,
            "matching edge misses the piece");
    int outer = eu == piece_index ? ev : eu;
    require(outer != piece_index, "matching edge stays inside the piece");
    auto [it, fresh] = least.try_emplace(outer, e);
    if (!fresh && e < it->second) it->second = e;
  }
  ThinOutcome out;
  out.distinct = static_cast<long long>(least.size());
  if (out.distinct < want) return out;
  for (const auto& kv : least) out.edges.push_back(kv.second);
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.resize(want);
  out.reached = true;
  return out;
}

LeftoverSplit split_leftover(const Graph& g, const ElementMap& em,
                             long long threshold) {
  LeftoverSplit out;
  for (Vertex v : em.singleton_vertices) {
    long long into = 0;
    for (Vertex w : g.neighbors(v))
      if (em.element_of[w] < em.piece_count) ++into;
    (into >= threshold ? out.side_a : out.side_b).push_back(v);
  }
  return out;
}

LabelingOutcome random_labeling(
    const Graph& g, const std::vector<Piece>& pieces,
    std::span<const Vertex> leftover, int retries, Rng& rng,
    const std::function<std::string(const Labeling&)>& evaluate) {
  require(retries >= 1, "need at least one labeling attempt");
  LabelingOutcome out;
  for (int t = 1; t <= retries; ++t) {
    Labeling lab;
    lab.label.assign(g.ambient_size(), 0);
    lab.piece_flip.reserve(pieces.size());
    for (const Piece& p : pieces) {
      int flip = rng.coin() ? 1 : 0;
      lab.piece_flip.push_back(flip);
      for (Vertex v : p.sides.side_a) lab.label[v] = flip;
      for (Vertex v : p.sides.side_b) lab.label[v] = 1 - flip;
    }
    for (Vertex v : leftover) lab.label[v] = rng.coin() ? 1 : 0;
    std::string err = evaluate(lab);
    out.tries = t;
    if (err.empty()) {
      out.ok = true;
      out.labeling = std::move(lab);
      return out;
    }
    out.last_error = std::move(err);
  }
  return out;
}

Graph build_working_graph(const Graph& g, const Labeling& lab,
                          const ElementMap& em, const LeftoverSplit& split,
                          const std::vector<std::vector<Edge>>& thinned) {
  auto in_a = [&](Vertex v) {
    return std::binary_search(split.side_a.begin(), split.side_a.end(), v);
  };
  auto in_thin = [&](int piece, const Edge& e) {
    return std::binary_search(thinned[piece].begin(), thinned[piece].end(),
                              e);
  };
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (lab.label[e.u] == lab.label[e.v]) continue;
    if (in_a(e.u) && in_a(e.v)) continue;
    int eu = em.element_of[e.u];
    int ev = em.element_of[e.v];
    bool up = eu < em.piece_count;
    bool vp = ev < em.piece_count;
    if (up && vp && eu != ev && !in_thin(eu, e) && !in_thin(ev, e)) continue;
    kept.push_back(e);
  }
  return Graph(g.ambient_size(), g.vertices(), kept);
}

std::string property_checks(const Graph& gp, const ElementMap& em,
                            const LeftoverSplit& split,
                            const std::vector<std::vector<Edge>>& thinned,
                            const PipelineConfig& cfg) {
  for (int i = 0; i < em.piece_count; ++i) {
    std::set<int> outers;
    for (const Edge& e : thinned[i])
      if (gp.has_edge(e.u, e.v)) {
        int eu = em.element_of[e.u];
        outers.insert(eu == i ? em.element_of[e.v] : eu);
      }
    if (static_cast<long long>(outers.size()) < cfg.touch_threshold)
      return "piece " + std::to_string(i) + " keeps " +
             std::to_string(outers.size()) + " touched elements, needs " +
             std::to_string(cfg.touch_threshold);
  }
  for (Vertex b : split.side_b) {
    long long d = 0;
    for (Vertex w : gp.neighbors(b))
      if (em.element_of[w] >= em.piece_count) ++d;
    if (d < cfg.b_degree_threshold)
      return "vertex " + std::to_string(b) + " keeps " + std::to_string(d) +
             " leftover edges, needs " + std::to_string(cfg.b_degree_threshold);
  }
  for (Vertex a : split.side_a) {
    std::set<int> touched;
    for (Vertex w : gp.neighbors(a))
      if (em.element_of[w] < em.piece_count) touched.insert(em.element_of[w]);
    if (static_cast<long long>(touched.size()) < cfg.a_distinct_threshold)
      return "vertex " + std::to_string(a) + " touches " +
             std::to_string(touched.size()) + " pieces, needs " +
             std::to_string(cfg.a_distinct_threshold);
  }
  return "";
}

Digraph orient_and_project(const Graph& gp, const ElementMap& em,
                           const LeftoverSplit& split,
                           const std::vector<std::vector<Edge>>& thinned) {
  auto in_a = [&](Vertex v) {
    return std::binary_search(split.side_a.begin(), split.side_a.end(), v);
  };
  auto in_thin = [&](int piece, const Edge& e) {
    return std::binary_search(thinned[piece].begin(), thinned[piece].end(),
                              e);
  };
  std::set<Arc> arcs;
  for (const Edge& e : gp.edges()) {
    int eu = em.element_of[e.u];
    int ev = em.element_of[e.v];
    if (eu == ev) continue;
    bool up = eu < em.piece_count;
    bool vp = ev < em.piece_count;
    bool tu = up && in_thin(eu, e);
    bool tv = vp && in_thin(ev, e);
    if (tu || tv) {
      if (tu) arcs.insert(Arc{eu, ev});
      if (tv) arcs.insert(Arc{ev, eu});
    } else if (up != vp) {
      int pe = up ? eu : ev;
      int le = up ? ev : eu;
      Vertex lv = up ? e.v : e.u;
      if (in_a(lv))
        arcs.insert(Arc{le, pe});
      else
        arcs.insert(Arc{std::min(pe, le), std::max(pe, le)});
    } else if (!up && !vp) {
      arcs.insert(Arc{eu, ev});
      arcs.insert(Arc{ev, eu});
    } else {
      ensure(false, "inter-piece edge outside both thinned matchings");
    }
  }
  std::vector<Arc> av(arcs.begin(), arcs.end());
  std::vector<Vertex> all(em.element_count());
  std::iota(all.begin(), all.end(), 0);
  return Digraph(em.element_count(), all, av);
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::extract_pieces:
      return "extract_pieces";
    case Stage::escape_matching:
      return "escape_matching";
    case Stage::thin_matching:
      return "thin_matching";
    case Stage::labeling:
      return "labeling";
    case Stage::peel_precondition:
      return "peel_precondition";
    case Stage::family_membership:
      return "family_membership";
    case Stage::rounds_exhausted:
      return "rounds_exhausted";
  }
  return "unknown";
}

DeepRoundResult deep_round(const Graph& g, const std::vector<Piece>& pieces,
                           const PipelineConfig& cfg, int round) {
  require(cfg.k >= 1, "connectivity target must be positive");
  require(!pieces.empty(), "deep round needs at least one piece");
  int k = cfg.k;
  auto fail = [&](Stage st, std::string detail,
                  std::vector<std::string> wit = {}) {
    return DeepRoundResult{
        FailureReport{st, std::move(detail), std::move(wit), cfg.seed}};
  };

  ElementMap em = make_element_map(g, pieces);

  std::vector<std::vector<Edge>> escapes;
  escapes.reserve(pieces.size());
  for (int i = 0; i < em.piece_count; ++i) {
    EscapeOutcome eo = escape_matching(g, pieces, i, cfg.matching_target);
    if (!eo.reached) {
      std::string cover = "cover";
      for (Vertex v : eo.cover) cover += " " + std::to_string(v);
      return fail(Stage::escape_matching,
                  "piece " + std::to_string(i) + " escape matching reaches " +
                      std::to_string(eo.matching.size()) + ", needs " +
                      std::to_string(cfg.matching_target),
                  {cover});
    }
    escapes.push_back(std::move(eo.matching));
  }

  std::vector<std::vector<Edge>> thinned;
  thinned.reserve(pieces.size());
  for (int i = 0; i < em.piece_count; ++i) {
    ThinOutcome to = thin_matching(em, i, escapes[i], cfg.thinned_size);
    if (!to.reached)
      return fail(Stage::thin_matching,
                  "piece " + std::to_string(i) + " reaches " +
                      std::to_string(to.distinct) +
                      " distinct elements, needs " +
                      std::to_string(cfg.thinned_size));
    thinned.push_back(std::move(to.edges));
  }

  LeftoverSplit split = split_leftover(g, em, cfg.degree_split_threshold);

  Rng label_rng = Rng(cfg.seed).stream("labels/" + std::to_string(round));
  auto evaluate = [&](const Labeling& lab) {
    return property_checks(build_working_graph(g, lab, em, split, thinned),
                           em, split, thinned, cfg);
  };
  LabelingOutcome lo =
      random_labeling(g, pieces, em.singleton_vertices, cfg.labeling_retries,
                      label_rng, evaluate);
  if (!lo.ok)
    return fail(Stage::labeling,
                "no labeling passed the degree checks in " +
                    std::to_string(lo.tries) + " tries",
                {lo.last_error});

  Graph gp = build_working_graph(g, lo.labeling, em, split, thinned);
  Digraph d = orient_and_project(gp, em, split, thinned);

  int budget = (k - 1) * ceil_log2(em.element_count());
  if (d.min_out_degree() <= budget) {
    Vertex worst = d.vertices().front();
    for (Vertex e : d.vertices())
      if (d.out_degree(e) < d.out_degree(worst)) worst = e;
    return fail(Stage::peel_precondition,
                "element " + std::to_string(worst) + " has out-degree " +
                    std::to_string(d.out_degree(worst)) +
                    ", needs more than " + std::to_string(budget));
  }

  PeelResult pr = peel_to_k_connected(d, k);

  std::vector<int> live_pieces;
  std::vector<Vertex> live_singles;
  std::vector<Vertex> live_vertices;
  for (Vertex e : pr.sub.vertices()) {
    if (e < em.piece_count) {
      live_pieces.push_back(e);
      live_vertices.insert(live_vertices.end(), pieces[e].vertices.begin(),
                           pieces[e].vertices.end());
    } else {
      Vertex v = em.singleton_vertices[e - em.piece_count];
      live_singles.push_back(v);
      live_vertices.push_back(v);
    }
  }
  std::sort(live_vertices.begin(), live_vertices.end());
  Graph merged = induced_subgraph(gp, live_vertices);

  std::vector<Graph> tuple_graphs;
  tuple_graphs.reserve(live_pieces.size());
  for (int p : live_pieces) tuple_graphs.push_back(piece_graph(g, pieces[p]));
  PieceTuple x(std::move(tuple_graphs), live_singles, k);

  const std::vector<Vertex>& live = pr.sub.vertices();
  std::vector<int> newid(em.element_count(), -1);
  for (int i = 0; i < static_cast<int>(live.size()); ++i) newid[live[i]] = i;
  std::vector<Edge> redges;
  for (const Edge& e : underlying_graph(pr.sub).edges())
    redges.push_back(make_edge(newid[e.u], newid[e.v]));
  PatternGraph r(Graph(static_cast<int>(live.size()), redges), k);

  FamilyMembershipReport rep = check_family_membership(merged, x, r, k);
  if (!rep.all_clear()) {
    std::vector<std::string> wit;
    if (!rep.piece_edges_present)
      wit.push_back("piece edge missing from the merged component");
    for (const Edge& e : rep.missing_pattern_edges)
      wit.push_back("pattern edge " + std::to_string(e.u) + " " +
                    std::to_string(e.v) + " unrealized");
    for (auto [p, got] : rep.escape_deficits)
      wit.push_back("piece " + std::to_string(p) + " escapes " +
                    std::to_string(got) + " elements, needs " +
                    std::to_string(k));
    return fail(Stage::family_membership,
                "merged component failed the assembly conditions",
                std::move(wit));
  }
  ensure(is_k_connected(merged, k).ok,
         "assembled component is not k-connected");

  Decomposition dec;
  dec.absorbed_pieces = std::move(live_pieces);
  dec.absorbed_singletons = std::move(live_singles);
  dec.merged = std::move(merged);
  dec.trace = std::move(pr.trace);
  return DeepRoundResult{std::move(dec)};
}

std::vector<Piece> fold_merged_component(const Graph& g,
                                         const std::vector<Piece>& pieces,
                                         const Decomposition& d, int k) {
  Piece np;
  np.vertices = d.merged.vertices();
  ensure(two_coloring(d.merged, np.sides),
         "merged component must be bipartite");
  ensure(is_k_connected(piece_graph(g, np), k).ok,
         "folded piece lost its connectivity");

  std::vector<Piece> out;
  if (d.absorbed_pieces.empty()) {
    out = pieces;
    out.push_back(std::move(np));
    return out;
  }
  int at = *std::min_element(d.absorbed_pieces.begin(),
                             d.absorbed_pieces.end());
  std::set<int> absorbed(d.absorbed_pieces.begin(), d.absorbed_pieces.end());
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
    if (i == at)
      out.push_back(std::move(np));
    else if (!absorbed.count(i))
      out.push_back(pieces[i]);
  }
  return out;
}

BackboneResult backbone(const Graph& g, const PipelineConfig& cfg) {
  require(cfg.k >= 1, "connectivity target must be positive");
  require(g.vertex_count() >= 1, "empty graph");
  require(cfg.max_rounds >= 0, "negative round cap");

  auto measure = [](const std::vector<Piece>& ps) {
    long long cov = 0;
    for (const Piece& p : ps) cov += static_cast<long long>(p.vertices.size());
    return std::pair<long long, long long>(cov,
                                           -static_cast<long long>(ps.size()));
  };

  std::vector<Piece> pieces = extract_pieces(g, cfg, {}, 0);
  int round = 0;
  while (true) {
    for (const Piece& p : pieces)
      if (static_cast<int>(p.vertices.size()) == g.vertex_count()) {
        Graph host = piece_graph(g, p);
        int kappa = vertex_connectivity(host).kappa;
        ensure(kappa >= cfg.k, "spanning piece fails the connectivity target");
        Certificate c;
        c.n = g.vertex_count();
        c.sides = p.sides;
        c.edges = host.edges();
        c.kappa_verified = kappa;
        c.seed = cfg.seed;
        return BackboneResult{std::move(c), round};
      }
    if (pieces.empty())
      return BackboneResult{
          FailureReport{Stage::extract_pieces,
                        "no piece cleared the size threshold", {}, cfg.seed},
          round};
    if (round >= cfg.max_rounds)
      return BackboneResult{
          FailureReport{Stage::rounds_exhausted,
                        "no spanning piece after " + std::to_string(round) +
                            " rounds",
                        {},
                        cfg.seed},
          round};

    std::pair<long long, long long> before = measure(pieces);
    DeepRoundResult dr = deep_round(g, pieces, cfg, round);
    if (FailureReport* f = std::get_if<FailureReport>(&dr.outcome))
      return BackboneResult{std::move(*f), round};
    pieces = fold_merged_component(g, pieces,
                                   std::get<Decomposition>(dr.outcome), cfg.k);
    ++round;
    pieces = extract_pieces(g, cfg, std::move(pieces), round);
    ensure(measure(pieces) > before, "round made no progress");
  }
}

}  // namespace backbone
