#pragma once

#include <cstdint>
#include <string>

#include "wellclust/engine.hpp"
#include "wellclust/graph.hpp"

namespace wellclust {

/// Ingest counters for one edge-list file.
struct EdgeListReport {
  std::uint64_t lines_read = 0;    // every line, comments and blanks included
  std::uint64_t edge_records = 0;  // lines parsed into endpoint pairs
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_dropped = 0;
};

/// Reads whitespace-separated "u v" pairs, one edge per line; lines starting
/// with '#' or '%' are comments. The vertex space is 0..max id seen.
Graph read_edge_list(const std::string& path, EdgeListReport* report = nullptr);

/// Reads TSV "vertex<TAB>cluster" rows. A vertex listed twice is an error.
Clustering read_clustering(const std::string& path);

/// Writes TSV rows sorted by vertex id with cluster ids renumbered 0..k-1 in
/// order of smallest member, so identical partitions serialize
/// byte-identically whatever their incoming ids.
void write_clustering(const Clustering& clustering, const std::string& path);

/// Flag grammar for connectivity floors: "log10", "log2", "sqrt", "linear:K".
Criterion parse_criterion(const std::string& text);
std::string criterion_to_string(const Criterion& criterion);

struct RunManifest {
  std::string graph_path;
  std::string clustering_path;
  std::string output_path;
  RefinementConfig config;
  std::string stats_path;  // empty skips the stats file
};

/// Runs the whole pipeline described by the manifest: ingest both files,
/// refine, write the clustering and (optionally) a key:value stats file.
/// Error messages name the failing stage. Returns the run stats either way.
RunStats execute_run(const RunManifest& manifest);

/// Entry point behind the command-line binary. Returns the process exit
/// code: 0 success, 1 runtime failure, 2 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace wellclust
