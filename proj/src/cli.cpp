#include <cstdint>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "wellclust/io.hpp"

namespace wellclust {

namespace {

unsigned default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Splits graph clusters until each one is connected more strongly than a size-based floor"};

  std::string graph_path;
  std::string clusters_path;
  std::string out_path;
  std::string mode = "wcc";
  std::string criterion_text = "log10";
  std::string cda_text = "cpm";
  std::string stats_path;
  std::uint64_t s_pre = 1;
  std::uint64_t s_post = 1;
  unsigned threads = default_threads();
  double cda_resolution = 0.01;
  std::uint32_t cda_max_passes = 10;
  std::uint64_t seed = 0;

  app.add_option("--graph", graph_path, "edge list, one 'u v' pair per line")->required();
  app.add_option("--clusters", clusters_path, "input clustering, TSV vertex<TAB>cluster")
      ->required();
  app.add_option("--out", out_path, "output clustering path")->required();
  app.add_option("--mode", mode, "refinement mode")
      ->check(CLI::IsMember({"wcc", "cm"}))
      ->capture_default_str();
  app.add_option("--criterion", criterion_text, "connectivity floor: log10, log2, sqrt, linear:K")
      ->capture_default_str();
  app.add_option("--s-pre", s_pre, "keep preprocessing components strictly larger than this")
      ->capture_default_str();
  app.add_option("--s-post", s_post, "keep recursion pieces strictly larger than this")
      ->capture_default_str();
  app.add_option("--threads", threads, "worker count")
      ->check(CLI::Range(1u, 65536u))
      ->capture_default_str();
  app.add_option("--cda", cda_text, "community detector for cm mode: cpm or labels:PATH")
      ->capture_default_str();
  app.add_option("--cda-resolution", cda_resolution, "community detector resolution")
      ->capture_default_str();
  app.add_option("--cda-max-passes", cda_max_passes, "community detector sweep bound")
      ->capture_default_str();
  app.add_option("--stats", stats_path, "write run statistics to this file");
  app.add_option("--seed", seed, "tie-break seed for the community detector")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help lands here too and should stay a success.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunManifest manifest;
  manifest.graph_path = graph_path;
  manifest.clustering_path = clusters_path;
  manifest.output_path = out_path;
  manifest.stats_path = stats_path;
  RefinementConfig& cfg = manifest.config;
  cfg.mode = mode == "cm" ? Mode::cm : Mode::wcc;
  cfg.s_pre = s_pre;
  cfg.s_post = s_post;
  cfg.parallelism = threads;
  cfg.cda.resolution = cda_resolution;
  cfg.cda.max_passes = cda_max_passes;
  cfg.cda.seed = seed;
  try {
    cfg.criterion = parse_criterion(criterion_text);
    if (cda_text == "cpm") {
      cfg.cda.kind = CdaKind::cpm_heuristic;
    } else if (cda_text.rfind("labels:", 0) == 0 && cda_text.size() > 7) {
      cfg.cda.kind = CdaKind::external_labels;
      cfg.cda.labels_path = cda_text.substr(7);
    } else {
      throw std::invalid_argument("unknown --cda value '" + cda_text +
                                  "' (expected cpm or labels:PATH)");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  for (const std::string& warning : config_warnings(cfg)) {
    std::cerr << "warning: " << warning << "\n";
  }

  try {
    const RunStats stats = execute_run(manifest);
    std::cout << "clusters: " << stats.input_clusters << " in, " << stats.output_clusters
              << " out (" << stats.ccr_components << " components after preprocessing)\n"
              << "vertices: " << stats.vertices_clustered_in << " in, "
              << stats.vertices_clustered_out << " kept, " << stats.vertices_discarded
              << " discarded\n"
              << "work: " << stats.mincut_calls << " min-cut calls, " << stats.cda_calls
              << " community-detection calls\n"
              << "wall: " << stats.wall_seconds << " s with " << cfg.parallelism << " worker"
              << (cfg.parallelism == 1 ? "" : "s") << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wellclust
