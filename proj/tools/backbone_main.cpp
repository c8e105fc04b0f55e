#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "backbone/connectivity.hpp"
#include "backbone/error.hpp"
#include "backbone/graph.hpp"
#include "backbone/io.hpp"
#include "backbone/oracle.hpp"
#include "backbone/pipeline.hpp"
#include "backbone/report.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using backbone::require;

// Accepts "3", "3/4", and decimals like "0.5".
backbone::Rational parse_rational(const std::string& text) {
  require(!text.empty(), "empty number");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::size_t pos = 0;
    long long num = std::stoll(text.substr(0, slash), &pos);
    require(pos == slash, "bad numerator in '" + text + "'");
    long long den = std::stoll(text.substr(slash + 1), &pos);
    require(pos == text.size() - slash - 1, "bad denominator in '" + text + "'");
    require(den != 0, "zero denominator in '" + text + "'");
    return backbone::Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t pos = 0;
    long long num = std::stoll(digits, &pos);
    require(pos == digits.size(), "bad number '" + text + "'");
    long long den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return backbone::Rational(num, den);
  }
  std::size_t pos = 0;
  long long num = std::stoll(text, &pos);
  require(pos == text.size(), "bad number '" + text + "'");
  return backbone::Rational(num);
}

std::uint64_t default_seed() {
  const char* env = std::getenv("BACKBONE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::string text(env);
  std::size_t pos = 0;
  std::uint64_t seed = std::stoull(text, &pos);
  require(pos == text.size(), "BACKBONE_SEED is not a number: '" + text + "'");
  return seed;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  require(static_cast<bool>(out), "cannot write '" + out_path + "'");
  out << text;
}

std::string join_ids(const std::vector<backbone::Vertex>& ids) {
  std::string line;
  for (auto v : ids) line += ' ' + std::to_string(v);
  return line;
}

struct BackboneOptions {
  std::string input;
  std::string out_path;
  int k = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string scale;
  int max_rounds = -1;
  std::vector<std::string> sets;
};

// Named pipeline knobs reachable through --set.
void apply_override(backbone::PipelineConfig& cfg, const std::string& key,
                    const std::string& value) {
  std::size_t pos = 0;
  long long num = std::stoll(value, &pos);
  require(pos == value.size(), "bad value in --set " + key + "=" + value);
  if (key == "max_rounds") {
    require(num >= 0, "max_rounds must be >= 0");
    cfg.max_rounds = static_cast<int>(num);
    return;
  }
  if (key == "labeling_retries") {
    require(num >= 1, "labeling_retries must be >= 1");
    cfg.labeling_retries = static_cast<int>(num);
    return;
  }
  require(num >= 1, key + " must be >= 1");
  if (key == "size_threshold") {
    cfg.size_threshold = num;
  } else if (key == "matching_target") {
    cfg.matching_target = num;
  } else if (key == "degree_split_threshold") {
    cfg.degree_split_threshold = num;
  } else if (key == "thinned_size") {
    cfg.thinned_size = num;
  } else if (key == "touch_threshold") {
    cfg.touch_threshold = num;
  } else if (key == "a_distinct_threshold") {
    cfg.a_distinct_threshold = num;
  } else if (key == "b_degree_threshold") {
    cfg.b_degree_threshold = num;
  } else {
    require(false, "unknown --set key '" + key + "'");
  }
}

int run_kappa(const std::string& input) {
  backbone::Graph g = backbone::parse_graph_file(input);
  auto res = backbone::vertex_connectivity(g);
  std::cout << "kappa " << res.kappa << "\n";
  if (res.witness.has_value())
    std::cout << "cut" << join_ids(res.witness->cut) << "\n";
  return 0;
}

int run_backbone(const BackboneOptions& opt) {
  backbone::Graph g = backbone::parse_graph_file(opt.input);
  std::uint64_t seed = opt.seed_given ? opt.seed : default_seed();
  backbone::PipelineConfig cfg;
  if (opt.scale.empty()) {
    cfg = backbone::PipelineConfig::desk(opt.k, g.vertex_count(), seed);
  } else {
    cfg = backbone::PipelineConfig::at_scale(opt.k, g.vertex_count(), seed,
                                             parse_rational(opt.scale));
  }
  if (opt.max_rounds >= 0) cfg.max_rounds = opt.max_rounds;

  backbone::RunManifest man;
  man.command = "backbone";
  man.input = opt.input;
  man.version = kVersion;
  for (const auto& item : opt.sets) {
    auto eq = item.find('=');
    require(eq != std::string::npos && eq > 0,
            "--set expects key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    apply_override(cfg, key, value);
    man.overrides.emplace_back(key, value);
  }

  auto res = backbone::backbone(g, cfg);
  if (const auto* cert = std::get_if<backbone::Certificate>(&res.outcome)) {
    write_text(opt.out_path, backbone::format_certificate(*cert, cfg, man));
    return 0;
  }
  const auto& fail = std::get<backbone::FailureReport>(res.outcome);
  write_text(opt.out_path, backbone::format_failure(fail, cfg, man));
  return 1;
}

int run_verify(const std::string& graph_path, const std::string& cert_path,
               int k) {
  backbone::Graph host = backbone::parse_graph_file(graph_path);
  backbone::ParsedCertificate cert =
      backbone::parse_certificate_file(cert_path);
  if (k > 0 && cert.kappa_verified < k) {
    std::cout << "KAPPA_TOO_LOW\n";
    return 1;
  }
  std::string clause = backbone::verify_certificate(host, cert);
  if (!clause.empty()) {
    std::cout << clause << "\n";
    return 1;
  }
  std::cout << "OK kappa " << cert.kappa_verified << "\n";
  return 0;
}

struct BenchOptions {
  std::string family;
  std::string params;
  std::string k_range = "2";
  int seeds = 1;
  std::string out_csv;
};

// "n=40,p=0.5" style generator parameters.
backbone::GeneratorSpec parse_params(backbone::Family family,
                                     const std::string& params) {
  backbone::GeneratorSpec spec;
  spec.family = family;
  std::stringstream in(params);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    require(eq != std::string::npos && eq > 0,
            "--params expects key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (key == "p") {
      spec.p = parse_rational(value);
      continue;
    }
    std::size_t pos = 0;
    long long num = std::stoll(value, &pos);
    require(pos == value.size(), "bad value in --params " + item);
    int v = static_cast<int>(num);
    if (key == "n") {
      spec.n = v;
    } else if (key == "a") {
      spec.a = v;
    } else if (key == "b") {
      spec.b = v;
    } else if (key == "dim") {
      spec.dim = v;
    } else if (key == "degree") {
      spec.degree = v;
    } else if (key == "blob1") {
      spec.blob1 = v;
    } else if (key == "blob2") {
      spec.blob2 = v;
    } else if (key == "blob_k") {
      spec.blob_k = v;
    } else if (key == "bridges") {
      spec.bridges = v;
    } else {
      require(false, "unknown --params key '" + key + "'");
    }
  }
  return spec;
}

int run_bench(const BenchOptions& opt) {
  backbone::Family family;
  require(backbone::family_from_name(opt.family, family),
          "unknown family '" + opt.family + "'");
  backbone::GeneratorSpec base = parse_params(family, opt.params);

  int klo = 0, khi = 0;
  auto colon = opt.k_range.find(':');
  if (colon == std::string::npos) {
    std::size_t pos = 0;
    klo = khi = static_cast<int>(std::stoll(opt.k_range, &pos));
    require(pos == opt.k_range.size(), "bad --k-range '" + opt.k_range + "'");
  } else {
    std::size_t pos = 0;
    klo = static_cast<int>(std::stoll(opt.k_range.substr(0, colon), &pos));
    require(pos == colon, "bad --k-range '" + opt.k_range + "'");
    khi = static_cast<int>(
        std::stoll(opt.k_range.substr(colon + 1), &pos));
    require(pos == opt.k_range.size() - colon - 1,
            "bad --k-range '" + opt.k_range + "'");
  }
  require(1 <= klo && klo <= khi, "--k-range wants 1 <= lo <= hi");
  require(opt.seeds >= 1, "--seeds must be >= 1");

  std::ostringstream out;
  out << "# command=bench family=" << opt.family << " params=" << opt.params
      << " k=" << klo << ":" << khi << " seeds=" << opt.seeds
      << " version=" << kVersion << "\n";
  out << "family,n,kappa_input,k,seed,outcome,rounds,millis\n";
  for (int k = klo; k <= khi; ++k) {
    for (int s = 0; s < opt.seeds; ++s) {
      backbone::GeneratorSpec spec = base;
      spec.seed = static_cast<std::uint64_t>(s);
      backbone::Graph g = backbone::generate(spec);
      int kappa_input = backbone::vertex_connectivity(g).kappa;
      auto cfg = backbone::PipelineConfig::desk(
          k, g.vertex_count(), static_cast<std::uint64_t>(s));
      auto start = std::chrono::steady_clock::now();
      auto res = backbone::backbone(g, cfg);
      auto stop = std::chrono::steady_clock::now();
      auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                        stop - start)
                        .count();
      std::string outcome = "certificate";
      if (const auto* fail =
              std::get_if<backbone::FailureReport>(&res.outcome))
        outcome = backbone::stage_name(fail->stage);
      out << opt.family << "," << g.vertex_count() << "," << kappa_input
          << "," << k << "," << s << "," << outcome << "," << res.rounds
          << "," << millis << "\n";
    }
  }
  write_text(opt.out_csv, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spanning bipartite k-connected subgraph toolkit"};
  app.require_subcommand(1);

  std::string kappa_input;
  auto* kappa_cmd =
      app.add_subcommand("kappa", "vertex connectivity with a witness cut");
  kappa_cmd->add_option("input", kappa_input, "edge list file")->required();

  BackboneOptions bb;
  auto* bb_cmd = app.add_subcommand(
      "backbone", "search for a spanning bipartite k-connected subgraph");
  bb_cmd->add_option("input", bb.input, "edge list file")->required();
  bb_cmd->add_option("--k", bb.k, "connectivity target")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* seed_opt = bb_cmd->add_option("--seed", bb.seed, "run seed");
  bb_cmd->add_option("--scale", bb.scale,
                     "threshold scale, e.g. 1, 3/4, 0.5 (default: desk "
                     "scale fitted to the input size)");
  bb_cmd->add_option("--max-rounds", bb.max_rounds, "cap on deep rounds");
  bb_cmd->add_option("--set", bb.sets,
                     "override a pipeline knob, key=value; repeatable");
  bb_cmd->add_option("--out", bb.out_path, "write the report here");

  std::string verify_graph, verify_cert;
  int verify_k = 0;
  auto* verify_cmd =
      app.add_subcommand("verify", "check a certificate against its graph");
  verify_cmd->add_option("graph", verify_graph, "edge list file")->required();
  verify_cmd->add_option("certificate", verify_cert, "certificate file")
      ->required();
  verify_cmd->add_option("--k", verify_k,
                         "also demand this much verified connectivity");

  BenchOptions bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "run generated instances, print CSV");
  bench_cmd->add_option("--family", bench.family, "generator family")
      ->required();
  bench_cmd->add_option("--params", bench.params,
                        "generator parameters, e.g. n=40,p=0.5");
  bench_cmd->add_option("--k-range", bench.k_range,
                        "single k or lo:hi range");
  bench_cmd->add_option("--seeds", bench.seeds, "seeds 0..S-1 per k");
  bench_cmd->add_option("--out-csv", bench.out_csv, "write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*kappa_cmd) return run_kappa(kappa_input);
    if (*bb_cmd) {
      bb.seed_given = seed_opt->count() > 0;
      return run_backbone(bb);
    }
    if (*verify_cmd) return run_verify(verify_graph, verify_cert, verify_k);
    return run_bench(bench);
  } catch (const backbone::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const backbone::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
