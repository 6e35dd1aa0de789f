#include "wellclust/mincut.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace wellclust {

namespace {

void require_cut_input(const Graph& g, const char* op) {
  if (g.num_vertices() < 2) {
    throw std::invalid_argument(std::string(op) + ": graph has fewer than 2 vertices");
  }
  if (!is_connected(g)) {
    throw std::logic_error(std::string(op) + ": graph is not connected");
  }
}

MinCutResult make_result(std::int64_t weight, std::vector<VertexId> side, VertexId n) {
  std::sort(side.begin(), side.end());
  std::vector<bool> in_side(n, false);
  for (VertexId v : side) in_side[v] = true;
  std::vector<VertexId> other;
  other.reserve(n - side.size());
  for (VertexId v = 0; v < n; ++v) {
    if (!in_side[v]) other.push_back(v);
  }
  MinCutResult result;
  result.cut_weight = weight;
  // Canonical orientation: side_one holds vertex 0.
  if (in_side[0]) {
    result.side_one = std::move(side);
    result.side_two = std::move(other);
  } else {
    result.side_one = std::move(other);
    result.side_two = std::move(side);
  }
  return result;
}

// Heap entry for the maximum-adjacency ordering. Keys are totally ordered
// (weight desc, id asc), so the pop sequence does not depend on push order.
struct PhaseEntry {
  std::int64_t weight;
  VertexId vertex;
  bool operator<(const PhaseEntry& o) const {
    if (weight != o.weight) return weight < o.weight;
    return vertex > o.vertex;
  }
};

}  // namespace

MinCutResult global_min_cut(const Graph& g) {
  require_cut_input(g, "global_min_cut");
  const VertexId n = g.num_vertices();

  // Contracted working graph: weighted adjacency per supervertex, plus the
  // original vertices merged into it (for partition recovery).
  std::vector<std::unordered_map<VertexId, std::int64_t>> adj(n);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : g.neighbors(v)) adj[v].emplace(w, 1);
  }
  std::vector<std::vector<VertexId>> group(n);
  for (VertexId v = 0; v < n; ++v) group[v] = {v};
  std::vector<bool> alive(n, true);
  VertexId num_alive = n;

  std::int64_t best_weight = std::numeric_limits<std::int64_t>::max();
  std::vector<VertexId> best_side;

  std::vector<std::int64_t> key(n);
  std::vector<bool> in_order(n);

  while (num_alive > 1) {
    VertexId start = 0;
    while (!alive[start]) ++start;

    std::fill(key.begin(), key.end(), 0);
    std::fill(in_order.begin(), in_order.end(), false);

    std::priority_queue<PhaseEntry> heap;
    heap.push({0, start});
    VertexId added = 0;
    VertexId last = start, second_last = start;
    std::int64_t last_key = 0;

    while (added < num_alive) {
      PhaseEntry top = heap.top();
      heap.pop();
      VertexId v = top.vertex;
      if (in_order[v] || top.weight != key[v]) continue;  // stale entry
      in_order[v] = true;
      ++added;
      second_last = last;
      last = v;
      last_key = top.weight;
      for (const auto& [w, wt] : adj[v]) {
        if (!in_order[w]) {
          key[w] += wt;
          heap.push({key[w], w});
        }
      }
    }

    // Cut of the phase separates the group merged into `last` from the rest.
    if (last_key < best_weight) {
      best_weight = last_key;
      best_side = group[last];
    }

    // Contract `last` into `second_last`.
    VertexId s = second_last, t = last;
    for (const auto& [w, wt] : adj[t]) {
      if (w == s) continue;
      adj[s][w] += wt;
      adj[w][s] += wt;
      adj[w].erase(t);
    }
    adj[s].erase(t);
    adj[t].clear();
    group[s].insert(group[s].end(), group[t].begin(), group[t].end());
    group[t].clear();
    alive[t] = false;
    --num_alive;
  }

  return make_result(best_weight, std::move(best_side), n);
}

MinCutResult brute_force_min_cut(const Graph& g) {
  const VertexId n = g.num_vertices();
  if (n < 2 || n > 20) {
    throw std::invalid_argument("brute_force_min_cut: vertex count " + std::to_string(n) +
                                " outside supported range [2, 20]");
  }
  if (!is_connected(g)) {
    throw std::logic_error("brute_force_min_cut: graph is not connected");
  }

  std::vector<std::pair<VertexId, VertexId>> edge_list;
  edge_list.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_edge_slots(); ++i) {
    auto [u, v] = g.edge_at(i);
    if (u < v) edge_list.emplace_back(u, v);
  }

  // Every bipartition exactly once: vertex 0 is pinned to side_one, the
  // mask picks which of 1..n-1 join it.
  const std::uint32_t num_masks = 1u << (n - 1);
  std::int64_t best_weight = std::numeric_limits<std::int64_t>::max();
  std::vector<VertexId> best_side;
  std::vector<VertexId> side;
  for (std::uint32_t mask = 0; mask + 1 < num_masks; ++mask) {
    side.clear();
    side.push_back(0);
    for (VertexId v = 1; v < n; ++v) {
      if (mask & (1u << (v - 1))) side.push_back(v);
    }
    std::uint32_t membership = (mask << 1) | 1u;  // bit v = v in side_one
    std::int64_t weight = 0;
    for (auto [u, v] : edge_list) {
      if (((membership >> u) & 1u) != ((membership >> v) & 1u)) ++weight;
    }
    if (weight < best_weight ||
        (weight == best_weight &&
         std::lexicographical_compare(side.begin(), side.end(), best_side.begin(),
                                      best_side.end()))) {
      best_weight = weight;
      best_side = side;
    }
  }
  return make_result(best_weight, std::move(best_side), n);
}

}  // namespace wellclust
