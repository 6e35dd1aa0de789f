#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "wellclust/cda.hpp"
#include "wellclust/graph.hpp"

namespace wellclust {

enum class Mode { wcc, cm };

enum class CriterionKind { log10, log2, sqrt, linear };

// Connectivity floor f(n): a cluster of n vertices is accepted only when its
// global min cut strictly exceeds f(n). k applies to the linear kind only.
struct Criterion {
  CriterionKind kind = CriterionKind::log10;
  double k = 1.0;
};

// f(n) for n >= 1, unrounded. Callers compare cut > f(n) on the real value.
double compute_criterion(std::uint64_t subgraph_size, const Criterion& criterion);

// Vertex -> cluster id map. Vertices absent from the map are unclustered;
// input ids are opaque and only the grouping matters.
struct Clustering {
  std::unordered_map<VertexId, std::int64_t> assignments;
};

struct RefinementConfig {
  Mode mode = Mode::wcc;
  Criterion criterion;
  std::uint64_t s_pre = 1;   // keep preprocessing components strictly larger
  std::uint64_t s_post = 1;  // keep recursion pieces strictly larger
  CdaConfig cda;             // community detector, cm mode only
  unsigned parallelism = 1;  // worker-task width
};

// Non-fatal configuration oddities, one message per entry.
std::vector<std::string> config_warnings(const RefinementConfig& cfg);

// One refinement run, summarized. vertices_clustered_in counts distinct
// vertices in the input clustering; every one of them ends up either
// clustered out or discarded.
struct RunStats {
  std::uint64_t input_clusters = 0;
  std::uint64_t ccr_components = 0;
  std::uint64_t output_clusters = 0;
  std::uint64_t vertices_clustered_in = 0;
  std::uint64_t vertices_clustered_out = 0;
  std::uint64_t vertices_discarded = 0;
  std::uint64_t mincut_calls = 0;
  std::uint64_t cda_calls = 0;
  double wall_seconds = 0.0;
};

// Concurrent collector for accepted clusters. emit() may be called from many
// tasks at once; take_canonical() orders entries by smallest member so final
// ids never depend on completion order.
class ClusterSink {
 public:
  struct Entry {
    std::vector<VertexId> members;  // global vertex ids, ascending
    std::int64_t origin_cluster;    // input cluster id this was refined from
  };

  void emit(std::vector<VertexId> members, std::int64_t origin_cluster);
  std::vector<Entry> take_canonical();

 private:
  std::mutex mu_;
  std::vector<Entry> entries_;
};

// Preprocessing pass: per input cluster, drop the cluster if it induces no
// edges, otherwise keep each connected component whose size strictly exceeds
// s_pre. Output is ordered by input cluster id, then by smallest member.
std::vector<std::vector<VertexId>> refine_connected_components(const Graph& g,
                                                               const Clustering& clustering,
                                                               std::uint64_t s_pre);

// Min-cut acceptance check on one connected subgraph with at least one edge.
// Accepted vertex sets go to the sink tagged with origin_cluster; a failing
// subgraph is split along its min cut and sides larger than s_post recurse.
// When given, stats accumulates min-cut calls and discarded-vertex counts.
void wcc_check(const Subgraph& sub, const RefinementConfig& cfg, ClusterSink& sink,
               std::int64_t origin_cluster = 0, RunStats* stats = nullptr);

// As wcc_check, except each surviving side consults the community detector:
// multiple communities recurse separately, a single community keeps the side
// together for the next round.
void cm_check(const Subgraph& sub, const RefinementConfig& cfg, ClusterSink& sink,
              std::int64_t origin_cluster = 0, RunStats* stats = nullptr);

// Full pipeline: preprocessing, then per-component checks spread across
// cfg.parallelism workers. Output cluster ids are consecutive from 0 in
// canonical order (ascending smallest member). lineage, when given, receives
// the originating input cluster id for each output id.
Clustering run_wcc(const Graph& g, const Clustering& clustering, const RefinementConfig& cfg,
                   RunStats* stats = nullptr, std::vector<std::int64_t>* lineage = nullptr);
Clustering run_cm(const Graph& g, const Clustering& clustering, const RefinementConfig& cfg,
                  RunStats* stats = nullptr, std::vector<std::int64_t>* lineage = nullptr);

}  // namespace wellclust
