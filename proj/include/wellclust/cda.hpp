#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wellclust/graph.hpp"

namespace wellclust {

enum class CdaKind {
  cpm_heuristic,    // built-in CPM local-move + aggregation clusterer
  external_labels,  // partition supplied via a TSV label file
};

/// Configuration of the community-detection step used inside CM refinement.
struct CdaConfig {
  CdaKind kind = CdaKind::cpm_heuristic;
  double resolution = 0.01;      // CPM gamma
  std::uint32_t max_passes = 10; // local-move sweep bound per aggregation level
  std::uint64_t seed = 0;        // permutes visit order only; fixed default

  // external_labels: either a preloaded table or a path to load from.
  std::shared_ptr<const std::unordered_map<VertexId, std::int64_t>> labels;
  std::string labels_path;
};

/// Disjoint non-empty vertex sets covering the graph, each inducing a
/// connected subgraph. Communities are sorted ascending and ordered by
/// smallest member.
struct CommunityAssignment {
  std::vector<std::vector<VertexId>> communities;
};

/// Partitions g by heuristically maximizing the CPM objective
///   H = sum_c [ |E_c| - gamma * n_c * (n_c - 1) / 2 ]
/// via local moves and graph aggregation from a singleton start, then
/// splits any disconnected community into its connected components.
/// Deterministic for a fixed config.
///
/// id_map, when non-empty, translates local vertex i to id_map[i] before
/// looking up external labels; it is ignored by the cpm_heuristic kind.
CommunityAssignment get_communities(const Graph& g, const CdaConfig& cfg,
                                    std::span<const VertexId> id_map = {});

/// CPM objective of a full partition of g. Raises std::invalid_argument if
/// the assignment is not a partition of g's vertices.
double score_cpm(const Graph& g, const CommunityAssignment& assignment, double resolution);

/// Loads a "vertex_id<TAB>community_id" label file. Duplicate vertex lines
/// are an error.
std::unordered_map<VertexId, std::int64_t> read_label_file(const std::string& path);

}  // namespace wellclust
