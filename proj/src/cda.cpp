#include "wellclust/cda.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace wellclust {

namespace {

constexpr double kGainTol = 1e-12;

// Aggregated working graph for one Louvain-style level. Edge weights count
// original edges; node sizes count original vertices.
struct LevelGraph {
  std::vector<std::size_t> offsets;
  std::vector<VertexId> neighbors;
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> node_sizes;
  std::vector<std::int64_t> self_weights;  // internal edges of a supernode

  VertexId size() const { return static_cast<VertexId>(node_sizes.size()); }
};

LevelGraph initial_level(const Graph& g) {
  LevelGraph level;
  level.offsets = g.neighbor_offsets();
  level.neighbors = g.neighbor_array();
  level.weights.assign(level.neighbors.size(), 1);
  level.node_sizes.assign(g.num_vertices(), 1);
  level.self_weights.assign(g.num_vertices(), 0);
  return level;
}

// Deterministic Fisher-Yates; avoids std::shuffle so the permutation does
// not depend on the standard library implementation.
std::vector<VertexId> visit_order(VertexId n, std::uint64_t seed) {
  std::vector<VertexId> order(n);
  for (VertexId i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (VertexId i = n; i > 1; --i) {
    auto j = static_cast<VertexId>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

// One level of CPM local moves. comm is updated in place; returns true if
// any move was made.
bool local_move_sweeps(const LevelGraph& level, const CdaConfig& cfg, std::uint64_t seed,
                       std::vector<VertexId>& comm) {
  const VertexId n = level.size();
  const double gamma = cfg.resolution;

  std::vector<std::int64_t> comm_size(n);
  for (VertexId v = 0; v < n; ++v) comm_size[comm[v]] += level.node_sizes[v];

  std::set<VertexId> free_ids;  // community ids with no members
  const auto order = visit_order(n, seed);

  // Gain of moving v (size s) from its community A to B:
  //   (k_vB - k_vA) - gamma * s * (S_B - S_A + s)
  // with S_A counting v and S_B not.
  std::unordered_map<VertexId, std::int64_t> weight_to;
  bool any_move = false;
  for (std::uint32_t pass = 0; pass < cfg.max_passes; ++pass) {
    bool moved_this_pass = false;
    for (VertexId v : order) {
      const VertexId current = comm[v];
      const std::int64_t s = level.node_sizes[v];

      weight_to.clear();
      for (std::size_t i = level.offsets[v]; i < level.offsets[v + 1]; ++i) {
        VertexId w = level.neighbors[i];
        if (w != v) weight_to[comm[w]] += level.weights[i];
      }
      std::int64_t k_current = 0;
      if (auto it = weight_to.find(current); it != weight_to.end()) k_current = it->second;

      const std::int64_t size_current = comm_size[current];
      double best_gain = 0.0;
      VertexId best_comm = current;
      bool have_candidate = false;

      auto consider = [&](VertexId candidate, std::int64_t k_to, std::int64_t candidate_size) {
        double gain = static_cast<double>(k_to - k_current) -
                      gamma * static_cast<double>(s) *
                          static_cast<double>(candidate_size - size_current + s);
        if (!have_candidate || gain > best_gain ||
            (gain == best_gain && candidate < best_comm)) {
          best_gain = gain;
          best_comm = candidate;
          have_candidate = true;
        }
      };

      for (const auto& [candidate, k_to] : weight_to) {
        if (candidate != current) consider(candidate, k_to, comm_size[candidate]);
      }
      if (comm_size[current] > s && !free_ids.empty()) {
        consider(*free_ids.begin(), 0, 0);  // split into a fresh community
      }

      if (have_candidate && best_gain > kGainTol) {
        comm_size[current] -= s;
        if (comm_size[current] == 0) free_ids.insert(current);
        comm_size[best_comm] += s;
        free_ids.erase(best_comm);
        comm[v] = best_comm;
        moved_this_pass = true;
        any_move = true;
      }
    }
    if (!moved_this_pass) break;
  }
  return any_move;
}

// Contracts communities into supernodes, preserving total edge weight and
// node sizes. dense maps old community ids to 0..k-1.
LevelGraph aggregate(const LevelGraph& level, const std::vector<VertexId>& comm,
                     const std::vector<VertexId>& dense, VertexId num_comms) {
  LevelGraph next;
  next.node_sizes.assign(num_comms, 0);
  next.self_weights.assign(num_comms, 0);
  std::vector<std::int64_t> internal_doubled(num_comms, 0);
  std::vector<std::unordered_map<VertexId, std::int64_t>> inter(num_comms);

  for (VertexId v = 0; v < level.size(); ++v) {
    const VertexId c = dense[comm[v]];
    next.node_sizes[c] += level.node_sizes[v];
    next.self_weights[c] += level.self_weights[v];
    for (std::size_t i = level.offsets[v]; i < level.offsets[v + 1]; ++i) {
      const VertexId cw = dense[comm[level.neighbors[i]]];
      if (cw == c) {
        internal_doubled[c] += level.weights[i];  // seen from both endpoints
      } else {
        inter[c][cw] += level.weights[i];
      }
    }
  }
  for (VertexId c = 0; c < num_comms; ++c) {
    assert(internal_doubled[c] % 2 == 0);
    next.self_weights[c] += internal_doubled[c] / 2;
  }

  next.offsets.assign(num_comms + 1, 0);
  for (VertexId c = 0; c < num_comms; ++c) next.offsets[c + 1] = next.offsets[c] + inter[c].size();
  next.neighbors.resize(next.offsets[num_comms]);
  next.weights.resize(next.offsets[num_comms]);
  for (VertexId c = 0; c < num_comms; ++c) {
    std::vector<std::pair<VertexId, std::int64_t>> row(inter[c].begin(), inter[c].end());
    std::sort(row.begin(), row.end());
    std::size_t pos = next.offsets[c];
    for (auto [w, wt] : row) {
      next.neighbors[pos] = w;
      next.weights[pos++] = wt;
    }
  }
  return next;
}

// Groups vertices by label, splits any group that is not connected in g,
// and emits communities sorted and ordered by smallest member.
CommunityAssignment canonicalize_with_repair(const Graph& g,
                                             const std::vector<std::int64_t>& label_of) {
  const VertexId n = g.num_vertices();
  std::unordered_map<std::int64_t, std::vector<VertexId>> groups;
  for (VertexId v = 0; v < n; ++v) groups[label_of[v]].push_back(v);

  std::vector<std::int64_t> member_group(n);
  for (VertexId v = 0; v < n; ++v) member_group[v] = label_of[v];

  std::vector<std::vector<VertexId>> communities;
  std::vector<bool> visited(n, false);
  std::vector<VertexId> stack;
  // BFS restricted to same-label vertices; scanning v ascending makes the
  // output order canonical by smallest member.
  for (VertexId v = 0; v < n; ++v) {
    if (visited[v]) continue;
    std::vector<VertexId> comp;
    visited[v] = true;
    stack.push_back(v);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (VertexId w : g.neighbors(u)) {
        if (!visited[w] && member_group[w] == member_group[u]) {
          visited[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    communities.push_back(std::move(comp));
  }
  return CommunityAssignment{std::move(communities)};
}

CommunityAssignment communities_from_labels(const Graph& g, const CdaConfig& cfg,
                                            std::span<const VertexId> id_map) {
  std::shared_ptr<const std::unordered_map<VertexId, std::int64_t>> table = cfg.labels;
  if (!table) {
    if (cfg.labels_path.empty()) {
      throw std::invalid_argument("get_communities: external_labels requires a label table or path");
    }
    table = std::make_shared<const std::unordered_map<VertexId, std::int64_t>>(
        read_label_file(cfg.labels_path));
  }

  const VertexId n = g.num_vertices();
  std::vector<std::int64_t> label_of(n);
  // Unlabeled vertices become singletons via synthetic negative labels.
  std::int64_t next_synthetic = std::numeric_limits<std::int64_t>::min();
  for (VertexId v = 0; v < n; ++v) {
    const VertexId key = id_map.empty() ? v : id_map[v];
    if (auto it = table->find(key); it != table->end()) {
      label_of[v] = it->second;
    } else {
      label_of[v] = next_synthetic++;
    }
  }
  return canonicalize_with_repair(g, label_of);
}

CommunityAssignment communities_from_cpm(const Graph& g, const CdaConfig& cfg) {
  const VertexId n0 = g.num_vertices();
  std::vector<std::int64_t> assignment(n0);
  for (VertexId v = 0; v < n0; ++v) assignment[v] = v;

  LevelGraph level = initial_level(g);
  std::vector<VertexId> node_of_original(n0);  // original vertex -> level node
  for (VertexId v = 0; v < n0; ++v) node_of_original[v] = v;

  for (std::uint32_t depth = 0;; ++depth) {
    std::vector<VertexId> comm(level.size());
    for (VertexId v = 0; v < level.size(); ++v) comm[v] = v;
    const bool moved = local_move_sweeps(level, cfg, cfg.seed + depth, comm);
    if (!moved) break;

    // Compact community ids in ascending order.
    std::vector<VertexId> used(comm);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    const auto num_comms = static_cast<VertexId>(used.size());
    std::vector<VertexId> dense(level.size());
    for (VertexId i = 0; i < num_comms; ++i) dense[used[i]] = i;

    for (VertexId v = 0; v < n0; ++v) {
      node_of_original[v] = dense[comm[node_of_original[v]]];
    }
    // Stop when contraction cannot shrink the graph further; aggregating a
    // same-size level would restart from singletons on an identical graph.
    if (num_comms == 1 || num_comms == level.size()) break;
    level = aggregate(level, comm, dense, num_comms);
  }

  std::vector<std::int64_t> label_of(n0);
  for (VertexId v = 0; v < n0; ++v) label_of[v] = node_of_original[v];
  return canonicalize_with_repair(g, label_of);
}

void validate_cda_config(const CdaConfig& cfg) {
  if (!(cfg.resolution > 0.0)) {
    throw std::invalid_argument("cda: resolution must be positive");
  }
  if (cfg.max_passes < 1) {
    throw std::invalid_argument("cda: max_passes must be at least 1");
  }
}

}  // namespace

CommunityAssignment get_communities(const Graph& g, const CdaConfig& cfg,
                                    std::span<const VertexId> id_map) {
  validate_cda_config(cfg);
  if (g.num_vertices() == 0) return {};
  if (cfg.kind == CdaKind::external_labels) return communities_from_labels(g, cfg, id_map);
  return communities_from_cpm(g, cfg);
}

double score_cpm(const Graph& g, const CommunityAssignment& assignment, double resolution) {
  const VertexId n = g.num_vertices();
  constexpr std::int64_t kUnassigned = -1;
  std::vector<std::int64_t> comm_of(n, kUnassigned);
  for (std::size_t c = 0; c < assignment.communities.size(); ++c) {
    for (VertexId v : assignment.communities[c]) {
      if (v >= n) {
        throw std::invalid_argument("score_cpm: vertex id " + std::to_string(v) +
                                    " outside graph");
      }
      if (comm_of[v] != kUnassigned) {
        throw std::invalid_argument("score_cpm: vertex " + std::to_string(v) +
                                    " appears in multiple communities");
      }
      comm_of[v] = static_cast<std::int64_t>(c);
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (comm_of[v] == kUnassigned) {
      throw std::invalid_argument("score_cpm: vertex " + std::to_string(v) +
                                  " missing from the assignment");
    }
  }

  double score = 0.0;
  for (const auto& community : assignment.communities) {
    const auto size = static_cast<double>(community.size());
    score -= resolution * size * (size - 1.0) / 2.0;
  }
  for (std::size_t i = 0; i < g.num_edge_slots(); ++i) {
    auto [u, v] = g.edge_at(i);
    if (u < v && comm_of[u] == comm_of[v]) score += 1.0;
  }
  return score;
}

std::unordered_map<VertexId, std::int64_t> read_label_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open label file: " + path);
  }
  std::unordered_map<VertexId, std::int64_t> labels;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    std::int64_t vertex = 0, label = 0;
    auto r1 = std::from_chars(begin, end, vertex);
    if (r1.ec != std::errc{}) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed vertex id");
    }
    const char* p = r1.ptr;
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
    auto r2 = std::from_chars(p, end, label);
    if (r2.ec != std::errc{} || vertex < 0) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed label line");
    }
    auto [it, inserted] = labels.emplace(static_cast<VertexId>(vertex), label);
    if (!inserted) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": duplicate vertex " +
                               std::to_string(vertex));
    }
  }
  return labels;
}

}  // namespace wellclust
