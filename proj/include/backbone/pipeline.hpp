#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "backbone/graph.hpp"
#include "backbone/peel.hpp"
#include "backbone/rational.hpp"
#include "backbone/rng.hpp"

namespace backbone {

// Tuning knobs for the backbone search. The defaults are inert; use the
// factories, which derive every threshold from the connectivity target k and
// the input size n (L below is max(1, ceil(log2 n))).
struct PipelineConfig {
  int k = 1;
  std::uint64_t seed = 0;
  // Every threshold formula is multiplied by this before rounding up.
  Rational scale{1, 1};
  int labeling_retries = 64;
  int max_rounds = 32;

  // Pieces smaller than this are dropped at the end of extraction.
  long long size_threshold = 1;
  // Escape matching size demanded from every piece.
  long long matching_target = 1;
  // Leftover vertices with at least this many edges into pieces form side A.
  long long degree_split_threshold = 1;
  // Escape matchings are thinned to this many element-distinct edges.
  long long thinned_size = 1;
  // Distinct elements each piece must still touch after relabeling.
  long long touch_threshold = 1;
  // Distinct pieces every A-vertex must touch in the working graph.
  long long a_distinct_threshold = 1;
  // Degree toward other leftover vertices every B-vertex must keep.
  long long b_degree_threshold = 1;

  // Full-strength thresholds: size 1000*k^2*L, matching 1000*k^2*L, degree
  // split 10000*k^3*L, thinned 250*k*L, touch 120*k*L, A-distinct
  // 2000*k^2*L, B-degree 100000*k^3*L.
  static PipelineConfig full_scale(int k, int n, std::uint64_t seed);
  // Same shapes with scale max(2k+2, n/8) / (1000*k^2*L), so the size
  // threshold lands at max(2k+2, n/8) and desk-sized inputs can clear it.
  static PipelineConfig desk(int k, int n, std::uint64_t seed);
  // The threshold formulas at an explicit positive scale.
  static PipelineConfig at_scale(int k, int n, std::uint64_t seed,
                                 Rational scale);
};

// A vertex set plus a bipartition of it. The piece stands for the graph of
// every host edge crossing the sides (see piece_graph); the pipeline keeps
// that graph k-connected as an invariant.
struct Piece {
  std::vector<Vertex> vertices;  // sorted
  Bipartition sides;             // partitions `vertices`
};

Graph piece_graph(const Graph& host, const Piece& p);

// Grow pieces until nothing movable remains: a leftover vertex with k host
// edges into one side of a piece joins the opposite side, and two pieces
// linked by a k-matching between a side pair merge (sides aligned so the
// matching crosses). Piece k-connectivity is re-checked after every move.
std::vector<Piece> augment_fixpoint(const Graph& g, std::vector<Piece> pieces,
                                    int k);

// Audits the extraction claim: every piece-pair side-pair matching has size
// below k, and every leftover vertex has fewer than k host edges into each
// side of each piece. Throws internal_error on a violation.
void assert_claim_fixpoint(const Graph& g, const std::vector<Piece>& pieces,
                           int k);

// Carve bipartite k-connected pieces out of g: grow the seeds to a fixpoint,
// then repeatedly scan leftover components (largest first) for a new piece —
// a component that is bipartite and k-connected as a whole, a dense-subgraph
// extraction when the average degree allows it, or a local-max-cut crossing
// graph pruned to a k-core and split along small cuts. Afterwards pieces
// below the size threshold are dropped (seeds and anything merged from them
// are kept regardless) and the fixpoint is re-run. The fixpoint audit runs
// before returning.
std::vector<Piece> extract_pieces(const Graph& g, const PipelineConfig& cfg,
                                  std::vector<Piece> seeds = {},
                                  int round = 0);

// Elements of one deep round: pieces first (element i = piece i), then every
// leftover vertex as a singleton, ascending.
struct ElementMap {
  int piece_count = 0;
  std::vector<Vertex> singleton_vertices;  // sorted; element piece_count + j
  std::vector<int> element_of;             // by ambient id; -1 when absent

  int element_count() const {
    return piece_count + static_cast<int>(singleton_vertices.size());
  }
};

ElementMap make_element_map(const Graph& g, const std::vector<Piece>& pieces);

// Matching between a piece and the rest of the host, truncated to exactly
// `target` edges (least first) when one that large exists; otherwise the
// maximum matching found plus a vertex cover certifying its maximality.
struct EscapeOutcome {
  bool reached = false;
  std::vector<Edge> matching;
  std::vector<Vertex> cover;
};

EscapeOutcome escape_matching(const Graph& g, const std::vector<Piece>& pieces,
                              int piece_index, long long target);

// Keep one matching edge per distinct outer element (the least edge), then
// the first `want` of those representatives.
struct ThinOutcome {
  bool reached = false;
  std::vector<Edge> edges;    // exactly `want` when reached
  long long distinct = 0;     // distinct outer elements seen
};

ThinOutcome thin_matching(const ElementMap& em, int piece_index,
                          std::span<const Edge> matching, long long want);

// Leftover vertices split by how strongly they attach to the pieces.
struct LeftoverSplit {
  std::vector<Vertex> side_a;  // at least `threshold` host edges into pieces
  std::vector<Vertex> side_b;  // the rest
};

LeftoverSplit split_leftover(const Graph& g, const ElementMap& em,
                             long long threshold);

// A 0/1 label per present vertex: piece vertices get their side label XORed
// with the piece's flip coin, leftover vertices get their own coin.
struct Labeling {
  std::vector<int> label;       // by ambient id; 0 outside the vertex set
  std::vector<int> piece_flip;  // per piece
};

struct LabelingOutcome {
  bool ok = false;
  Labeling labeling;
  int tries = 0;
  std::string last_error;
};

// Draw labelings until `evaluate` returns an empty string, at most `retries`
// times. Coins are drawn piece flips first, then leftover labels ascending.
LabelingOutcome random_labeling(
    const Graph& g, const std::vector<Piece>& pieces,
    std::span<const Vertex> leftover, int retries, Rng& rng,
    const std::function<std::string(const Labeling&)>& evaluate);

// The working graph: host edges whose endpoints have different labels,
// except edges inside side A, and inter-piece edges outside the thinned
// matchings of their two pieces. Bipartite by the labels.
Graph build_working_graph(const Graph& g, const Labeling& lab,
                          const ElementMap& em, const LeftoverSplit& split,
                          const std::vector<std::vector<Edge>>& thinned);

// First violated degree property as text, or "" when all hold: every piece
// keeps touch_threshold distinct elements through its surviving thinned
// matching, every B-vertex keeps b_degree_threshold working-graph edges into
// the leftover, and every A-vertex touches a_distinct_threshold pieces.
std::string property_checks(const Graph& gp, const ElementMap& em,
                            const LeftoverSplit& split,
                            const std::vector<std::vector<Edge>>& thinned,
                            const PipelineConfig& cfg);

// Project the working graph onto element indices. Thinned-matching edges
// leave their piece (edges thinned by both sides give both arcs); other
// A-piece edges leave A; piece-B edges run from the smaller element index
// to the larger; leftover-leftover edges give both arcs.
Digraph orient_and_project(const Graph& gp, const ElementMap& em,
                           const LeftoverSplit& split,
                           const std::vector<std::vector<Edge>>& thinned);

enum class Stage {
  extract_pieces,
  escape_matching,
  thin_matching,
  labeling,
  peel_precondition,
  family_membership,
  rounds_exhausted,
};

const char* stage_name(Stage s);

// Spanning bipartite subgraph of the input with its exact connectivity.
struct Certificate {
  int n = 0;
  Bipartition sides;
  std::vector<Edge> edges;
  int kappa_verified = 0;
  std::uint64_t seed = 0;
};

// Which stage gave up, with a human-readable reason and witness lines.
struct FailureReport {
  Stage stage = Stage::extract_pieces;
  std::string detail;
  std::vector<std::string> witness;
  std::uint64_t seed = 0;
};

// One successful deep round: the surviving elements' union is a bipartite
// k-connected graph ready to fold back into the piece list.
struct Decomposition {
  std::vector<int> absorbed_pieces;        // piece indices that survived peeling
  std::vector<Vertex> absorbed_singletons; // leftover vertices that survived
  Graph merged;                            // working graph on the survivors
  PeelTrace trace;
};

struct DeepRoundResult {
  std::variant<Decomposition, FailureReport> outcome;
};

// Escape matchings, thinning, leftover split, labeling search, working
// graph, degree checks, projection, peeling, and the assembly check, in that
// order; the first stage that cannot proceed reports failure.
DeepRoundResult deep_round(const Graph& g, const std::vector<Piece>& pieces,
                           const PipelineConfig& cfg, int round);

// Replace the absorbed pieces with one piece covering the merged component
// (placed at the least absorbed index), or append it when only singletons
// were absorbed.
std::vector<Piece> fold_merged_component(const Graph& g,
                                         const std::vector<Piece>& pieces,
                                         const Decomposition& d, int k);

struct BackboneResult {
  std::variant<Certificate, FailureReport> outcome;
  int rounds = 0;  // deep rounds executed
};

// Extract pieces, then alternate deep rounds and re-extraction until one
// piece spans the input (certificate) or a stage fails (report). Coverage
// grows or the piece count drops every round, which bounds the loop; the
// round cap is a backstop.
BackboneResult backbone(const Graph& g, const PipelineConfig& cfg);

}  // namespace backbone
