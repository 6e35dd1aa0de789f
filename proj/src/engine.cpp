#include "wellclust/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "wellclust/mincut.hpp"
#include "wellclust/task_pool.hpp"

namespace wellclust {

double compute_criterion(std::uint64_t subgraph_size, const Criterion& criterion) {
  const auto n = static_cast<double>(subgraph_size);
  switch (criterion.kind) {
    case CriterionKind::log10:
      return std::log10(n);
    case CriterionKind::log2:
      return std::log2(n);
    case CriterionKind::sqrt:
      return std::sqrt(n);
    case CriterionKind::linear:
      return criterion.k * n;
  }
  throw std::logic_error("compute_criterion: unhandled criterion kind");
}

std::vector<std::string> config_warnings(const RefinementConfig& cfg) {
  std::vector<std::string> warnings;
  if (cfg.s_post < cfg.s_pre) {
    warnings.push_back("s_post (" + std::to_string(cfg.s_post) + ") is below s_pre (" +
                       std::to_string(cfg.s_pre) +
                       "); recursion will keep pieces the preprocessing floor would drop");
  }
  return warnings;
}

void ClusterSink::emit(std::vector<VertexId> members, std::int64_t origin_cluster) {
  std::lock_guard lock(mu_);
  entries_.push_back(Entry{std::move(members), origin_cluster});
}

std::vector<ClusterSink::Entry> ClusterSink::take_canonical() {
  std::lock_guard lock(mu_);
  // Entries are disjoint, so smallest members are distinct and this order is
  // total regardless of emission order.
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.members.front() < b.members.front(); });
  return std::exchange(entries_, {});
}

namespace {

// Children at least this large go to the task pool; smaller ones recurse on
// the current thread so tiny splits skip the dispatch overhead.
constexpr std::size_t kSpawnThreshold = 1000;

struct RunCounters {
  std::atomic<std::uint64_t> mincut_calls{0};
  std::atomic<std::uint64_t> cda_calls{0};
  std::atomic<std::uint64_t> vertices_discarded{0};
};

struct CheckContext {
  const RefinementConfig& cfg;
  ClusterSink& sink;
  RunCounters& counters;
  TaskPool* pool;  // null runs everything on the calling thread
};

void check_task(const CheckContext& ctx, Subgraph sub, std::int64_t origin);

void dispatch_child(const CheckContext& ctx, Subgraph child, std::int64_t origin) {
  if (ctx.pool != nullptr && child.size() >= kSpawnThreshold) {
    auto boxed = std::make_shared<Subgraph>(std::move(child));
    const CheckContext* ctx_ptr = &ctx;
    ctx.pool->submit([ctx_ptr, boxed, origin] { check_task(*ctx_ptr, std::move(*boxed), origin); });
  } else {
    check_task(ctx, std::move(child), origin);
  }
}

void check_task(const CheckContext& ctx, Subgraph sub, std::int64_t origin) {
  // Edgeless pieces (single vertices, once s_post admits them) save nothing.
  if (sub.local_graph.num_edge_slots() == 0) {
    ctx.counters.vertices_discarded.fetch_add(sub.size(), std::memory_order_relaxed);
    return;
  }

  MinCutResult cut = global_min_cut(sub.local_graph);
  ctx.counters.mincut_calls.fetch_add(1, std::memory_order_relaxed);
  if (static_cast<double>(cut.cut_weight) > compute_criterion(sub.size(), ctx.cfg.criterion)) {
    ctx.sink.emit(std::move(sub.parent_vertex_ids), origin);
    return;
  }

  // Not well connected: split along the min cut and keep working the sides.
  const auto handle_side = [&](const std::vector<VertexId>& side_local) {
    if (side_local.size() <= ctx.cfg.s_post) {
      ctx.counters.vertices_discarded.fetch_add(side_local.size(), std::memory_order_relaxed);
      return;
    }
    Subgraph child = restrict_subgraph(sub, side_local);
    if (ctx.cfg.mode == Mode::wcc) {
      dispatch_child(ctx, std::move(child), origin);
      return;
    }

    CommunityAssignment found =
        get_communities(child.local_graph, ctx.cfg.cda, child.parent_vertex_ids);
    ctx.counters.cda_calls.fetch_add(1, std::memory_order_relaxed);
    if (found.communities.size() <= 1) {
      // One community: keep the side together for the next round.
      dispatch_child(ctx, std::move(child), origin);
      return;
    }
    for (const auto& community : found.communities) {
      if (community.size() <= ctx.cfg.s_post) {
        ctx.counters.vertices_discarded.fetch_add(community.size(), std::memory_order_relaxed);
        continue;
      }
      dispatch_child(ctx, restrict_subgraph(child, community), origin);
    }
  };
  handle_side(cut.side_one);
  handle_side(cut.side_two);
}

void validate_config(const RefinementConfig& cfg) {
  if (cfg.criterion.kind == CriterionKind::linear && !(cfg.criterion.k > 0.0)) {
    throw std::invalid_argument("criterion: linear kind requires k > 0");
  }
  if (cfg.parallelism < 1) {
    throw std::invalid_argument("config: parallelism must be at least 1");
  }
  if (cfg.mode == Mode::cm) {
    if (!(cfg.cda.resolution > 0.0)) {
      throw std::invalid_argument("cda: resolution must be positive");
    }
    if (cfg.cda.max_passes < 1) {
      throw std::invalid_argument("cda: max_passes must be at least 1");
    }
  }
}

struct CcrOutput {
  std::vector<std::vector<VertexId>> components;  // global vertex ids, ascending
  std::vector<std::int64_t> origins;              // input cluster id per component
  std::uint64_t input_clusters = 0;
  std::uint64_t vertices_in = 0;
  std::uint64_t discarded = 0;
};

CcrOutput ccr_pass(const Graph& g, const Clustering& clustering, std::uint64_t s_pre) {
  // Ordered grouping keeps the output deterministic: clusters by id, members
  // sorted within each.
  std::map<std::int64_t, std::vector<VertexId>> clusters;
  for (const auto& [vertex, cluster] : clustering.assignments) {
    clusters[cluster].push_back(vertex);
  }

  CcrOutput out;
  out.input_clusters = clusters.size();
  out.vertices_in = clustering.assignments.size();
  for (auto& [cluster_id, members] : clusters) {
    std::sort(members.begin(), members.end());
    for (VertexId v : members) {
      if (v >= g.num_vertices()) {
        throw std::invalid_argument("refine_connected_components: cluster " +
                                    std::to_string(cluster_id) + " contains vertex " +
                                    std::to_string(v) + " outside the graph");
      }
    }
    Subgraph sub = induced_subgraph(g, members);
    if (sub.local_graph.num_edge_slots() == 0) {
      out.discarded += members.size();
      continue;
    }
    for (const auto& component : connected_components(sub.local_graph)) {
      if (component.size() > s_pre) {
        std::vector<VertexId> global;
        global.reserve(component.size());
        for (VertexId local : component) global.push_back(sub.parent_vertex_ids[local]);
        out.components.push_back(std::move(global));
        out.origins.push_back(cluster_id);
      } else {
        out.discarded += component.size();
      }
    }
  }
  return out;
}

void run_check_inline(const Subgraph& sub, const RefinementConfig& cfg, ClusterSink& sink,
                      std::int64_t origin_cluster, RunStats* stats) {
  validate_config(cfg);
  RunCounters counters;
  CheckContext ctx{cfg, sink, counters, nullptr};
  check_task(ctx, sub, origin_cluster);
  if (stats != nullptr) {
    stats->mincut_calls += counters.mincut_calls.load();
    stats->cda_calls += counters.cda_calls.load();
    stats->vertices_discarded += counters.vertices_discarded.load();
  }
}

Clustering run_refinement(const Graph& g, const Clustering& clustering,
                          const RefinementConfig& cfg, RunStats* stats,
                          std::vector<std::int64_t>* lineage) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();

  CcrOutput ccr = ccr_pass(g, clustering, cfg.s_pre);
  const std::uint64_t num_components = ccr.components.size();

  ClusterSink sink;
  RunCounters counters;
  counters.vertices_discarded.store(ccr.discarded);
  {
    TaskPool pool(cfg.parallelism);
    CheckContext ctx{cfg, sink, counters, &pool};
    for (std::size_t i = 0; i < ccr.components.size(); ++i) {
      auto members = std::make_shared<std::vector<VertexId>>(std::move(ccr.components[i]));
      const std::int64_t origin = ccr.origins[i];
      pool.submit(
          [&g, &ctx, members, origin] { check_task(ctx, induced_subgraph(g, *members), origin); });
    }
    pool.wait_idle();
  }

  auto entries = sink.take_canonical();
  Clustering out;
  out.assignments.reserve(ccr.vertices_in);
  if (lineage != nullptr) {
    lineage->clear();
    lineage->reserve(entries.size());
  }
  for (std::size_t id = 0; id < entries.size(); ++id) {
    for (VertexId v : entries[id].members) {
      const auto [it, inserted] = out.assignments.emplace(v, static_cast<std::int64_t>(id));
      if (!inserted) {
        throw std::logic_error("refinement emitted vertex " + std::to_string(v) +
                               " into two clusters");
      }
    }
    if (lineage != nullptr) lineage->push_back(entries[id].origin_cluster);
  }

  if (stats != nullptr) {
    stats->input_clusters = ccr.input_clusters;
    stats->ccr_components = num_components;
    stats->output_clusters = entries.size();
    stats->vertices_clustered_in = ccr.vertices_in;
    stats->vertices_clustered_out = out.assignments.size();
    stats->vertices_discarded = counters.vertices_discarded.load();
    stats->mincut_calls = counters.mincut_calls.load();
    stats->cda_calls = counters.cda_calls.load();
    stats->wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

}  // namespace

std::vector<std::vector<VertexId>> refine_connected_components(const Graph& g,
                                                               const Clustering& clustering,
                                                               std::uint64_t s_pre) {
  return ccr_pass(g, clustering, s_pre).components;
}

void wcc_check(const Subgraph& sub, const RefinementConfig& cfg, ClusterSink& sink,
               std::int64_t origin_cluster, RunStats* stats) {
  RefinementConfig local = cfg;
  local.mode = Mode::wcc;
  run_check_inline(sub, local, sink, origin_cluster, stats);
}

void cm_check(const Subgraph& sub, const RefinementConfig& cfg, ClusterSink& sink,
              std::int64_t origin_cluster, RunStats* stats) {
  RefinementConfig local = cfg;
  local.mode = Mode::cm;
  run_check_inline(sub, local, sink, origin_cluster, stats);
}

Clustering run_wcc(const Graph& g, const Clustering& clustering, const RefinementConfig& cfg,
                   RunStats* stats, std::vector<std::int64_t>* lineage) {
  if (cfg.mode != Mode::wcc) {
    throw std::invalid_argument("run_wcc: config mode must be wcc");
  }
  return run_refinement(g, clustering, cfg, stats, lineage);
}

Clustering run_cm(const Graph& g, const Clustering& clustering, const RefinementConfig& cfg,
                  RunStats* stats, std::vector<std::int64_t>* lineage) {
  if (cfg.mode != Mode::cm) {
    throw std::invalid_argument("run_cm: config mode must be cm");
  }
  return run_refinement(g, clustering, cfg, stats, lineage);
}

}  // namespace wellclust
