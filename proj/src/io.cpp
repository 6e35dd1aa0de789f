#include "wellclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wellclust {

namespace {

const char* skip_blanks(const char* p, const char* end) {
  while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p;
}

// Parses "A B" with optional surrounding blanks; rejects any other content.
bool parse_pair(const std::string& line, std::int64_t& a, std::int64_t& b) {
  const char* end = line.data() + line.size();
  const char* p = skip_blanks(line.data(), end);
  auto first = std::from_chars(p, end, a);
  if (first.ec != std::errc{}) return false;
  p = skip_blanks(first.ptr, end);
  if (p == first.ptr) return false;  // fields must be separated
  auto second = std::from_chars(p, end, b);
  if (second.ec != std::errc{}) return false;
  return skip_blanks(second.ptr, end) == end;
}

[[noreturn]] void fail_at(const std::string& path, std::uint64_t line_no, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

void write_stats_file(const RunManifest& manifest, const EdgeListReport& ingest,
                      const RunStats& stats, const std::vector<std::int64_t>& lineage) {
  std::ofstream out(manifest.stats_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open stats file: " + manifest.stats_path);
  }
  const RefinementConfig& cfg = manifest.config;
  std::ostringstream text;
  text << "mode:" << (cfg.mode == Mode::cm ? "cm" : "wcc") << '\n'
       << "criterion:" << criterion_to_string(cfg.criterion) << '\n'
       << "s_pre:" << cfg.s_pre << '\n'
       << "s_post:" << cfg.s_post << '\n'
       << "threads:" << cfg.parallelism << '\n';
  if (cfg.mode == Mode::cm) {
    text << "cda_resolution:" << cfg.cda.resolution << '\n';
  }
  text << "graph_lines:" << ingest.lines_read << '\n'
       << "graph_edge_records:" << ingest.edge_records << '\n'
       << "graph_self_loops_dropped:" << ingest.self_loops_dropped << '\n'
       << "graph_duplicates_dropped:" << ingest.duplicates_dropped << '\n'
       << "input_clusters:" << stats.input_clusters << '\n'
       << "ccr_components:" << stats.ccr_components << '\n'
       << "output_clusters:" << stats.output_clusters << '\n'
       << "vertices_clustered_in:" << stats.vertices_clustered_in << '\n'
       << "vertices_clustered_out:" << stats.vertices_clustered_out << '\n'
       << "vertices_discarded:" << stats.vertices_discarded << '\n'
       << "mincut_calls:" << stats.mincut_calls << '\n'
       << "cda_calls:" << stats.cda_calls << '\n'
       << "wall_seconds:" << stats.wall_seconds << '\n';
  // One row per output cluster: which input cluster it was refined from.
  for (std::size_t i = 0; i < lineage.size(); ++i) {
    text << "lineage." << i << ':' << lineage[i] << '\n';
  }
  const std::string data = text.str();
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw std::runtime_error("failed writing stats file: " + manifest.stats_path);
  }
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(name) + ": " + e.what());
  }
}

}  // namespace

Graph read_edge_list(const std::string& path, EdgeListReport* report) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open graph file: " + path);
  }

  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* end = line.data() + line.size();
    const char* p = skip_blanks(line.data(), end);
    if (p == end || *p == '#' || *p == '%') continue;
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (!parse_pair(line, u, v)) fail_at(path, line_no, "expected two integer endpoints");
    if (u < 0 || v < 0) fail_at(path, line_no, "negative vertex id");
    pairs.emplace_back(u, v);
  }

  EdgeListReport local;
  local.lines_read = line_no;
  local.edge_records = pairs.size();
  BuildReport build;
  Graph g = build_graph(pairs, &build);
  local.self_loops_dropped = build.self_loops_dropped;
  local.duplicates_dropped = build.duplicates_dropped;
  if (report != nullptr) *report = local;
  return g;
}

Clustering read_clustering(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open clustering file: " + path);
  }

  Clustering clustering;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* end = line.data() + line.size();
    if (skip_blanks(line.data(), end) == end) continue;
    std::int64_t vertex = 0;
    std::int64_t cluster = 0;
    if (!parse_pair(line, vertex, cluster)) fail_at(path, line_no, "expected vertex and cluster id");
    if (vertex < 0) fail_at(path, line_no, "negative vertex id");
    if (vertex > static_cast<std::int64_t>(std::numeric_limits<VertexId>::max())) {
      fail_at(path, line_no, "vertex id out of range");
    }
    auto [it, inserted] = clustering.assignments.emplace(static_cast<VertexId>(vertex), cluster);
    if (!inserted) fail_at(path, line_no, "duplicate vertex " + std::to_string(vertex));
  }
  return clustering;
}

void write_clustering(const Clustering& clustering, const std::string& path) {
  std::vector<std::pair<VertexId, std::int64_t>> rows(clustering.assignments.begin(),
                                                      clustering.assignments.end());
  std::sort(rows.begin(), rows.end());

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  // Rows are vertex-sorted, so clusters first appear at their smallest
  // member; numbering them on first sight gives the canonical ids.
  std::unordered_map<std::int64_t, std::int64_t> new_id;
  new_id.reserve(rows.size());
  std::int64_t next = 0;
  std::string buffer;
  buffer.reserve(rows.size() * 12);
  for (const auto& [vertex, cluster] : rows) {
    auto it = new_id.find(cluster);
    if (it == new_id.end()) it = new_id.emplace(cluster, next++).first;
    buffer.append(std::to_string(vertex));
    buffer.push_back('\t');
    buffer.append(std::to_string(it->second));
    buffer.push_back('\n');
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

Criterion parse_criterion(const std::string& text) {
  Criterion criterion;
  if (text == "log10") {
    criterion.kind = CriterionKind::log10;
  } else if (text == "log2") {
    criterion.kind = CriterionKind::log2;
  } else if (text == "sqrt") {
    criterion.kind = CriterionKind::sqrt;
  } else if (text.rfind("linear:", 0) == 0) {
    criterion.kind = CriterionKind::linear;
    const std::string value = text.substr(7);
    double k = 0.0;
    auto parsed = std::from_chars(value.data(), value.data() + value.size(), k);
    if (parsed.ec != std::errc{} || parsed.ptr != value.data() + value.size() || !(k > 0.0)) {
      throw std::invalid_argument("criterion linear:K needs a positive real K, got '" + value + "'");
    }
    criterion.k = k;
  } else {
    throw std::invalid_argument("unknown criterion '" + text +
                                "' (expected log10, log2, sqrt, or linear:K)");
  }
  return criterion;
}

std::string criterion_to_string(const Criterion& criterion) {
  switch (criterion.kind) {
    case CriterionKind::log10:
      return "log10";
    case CriterionKind::log2:
      return "log2";
    case CriterionKind::sqrt:
      return "sqrt";
    case CriterionKind::linear: {
      std::ostringstream out;
      out << "linear:" << criterion.k;
      return out.str();
    }
  }
  return "unknown";
}

RunStats execute_run(const RunManifest& manifest) {
  if (manifest.graph_path.empty() || manifest.clustering_path.empty() ||
      manifest.output_path.empty()) {
    throw std::invalid_argument("run manifest: graph, clustering, and output paths are required");
  }

  EdgeListReport ingest;
  const Graph g =
      stage("graph ingest", [&] { return read_edge_list(manifest.graph_path, &ingest); });
  const Clustering input =
      stage("clustering ingest", [&] { return read_clustering(manifest.clustering_path); });

  RunStats stats;
  std::vector<std::int64_t> lineage;
  const Clustering output = stage("refinement", [&] {
    return manifest.config.mode == Mode::cm ? run_cm(g, input, manifest.config, &stats, &lineage)
                                            : run_wcc(g, input, manifest.config, &stats, &lineage);
  });
  stage("output write", [&] { write_clustering(output, manifest.output_path); });
  if (!manifest.stats_path.empty()) {
    stage("stats write", [&] { write_stats_file(manifest, ingest, stats, lineage); });
  }
  return stats;
}

}  // namespace wellclust
