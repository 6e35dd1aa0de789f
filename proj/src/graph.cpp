#include "wellclust/graph.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>

namespace wellclust {

Graph::Graph(std::vector<std::size_t> neighbor_offsets, std::vector<VertexId> neighbors,
             std::vector<VertexId> edge_sources)
    : num_vertices_(static_cast<VertexId>(neighbor_offsets.empty() ? 0 : neighbor_offsets.size() - 1)),
      neighbor_offsets_(std::move(neighbor_offsets)),
      neighbors_(std::move(neighbors)),
      edge_sources_(std::move(edge_sources)) {
  if (neighbor_offsets_.empty()) neighbor_offsets_ = {0};
  assert(neighbor_offsets_.back() == neighbors_.size());
  assert(neighbors_.size() == edge_sources_.size());
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

Graph build_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                  BuildReport* report) {
  BuildReport rep;
  rep.input_pairs = edges.size();

  constexpr std::int64_t kMaxId = std::numeric_limits<VertexId>::max() - 1;

  // Normalize to (min,max) pairs, dropping self-loops.
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(edges.size());
  std::int64_t max_id = -1;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 0 || v < 0) {
      throw std::invalid_argument("build_graph: negative vertex id in edge record " +
                                  std::to_string(i));
    }
    if (u > kMaxId || v > kMaxId) {
      throw std::invalid_argument("build_graph: vertex id out of supported range in edge record " +
                                  std::to_string(i));
    }
    max_id = std::max({max_id, u, v});
    if (u == v) {
      ++rep.self_loops_dropped;
      continue;
    }
    auto a = static_cast<VertexId>(std::min(u, v));
    auto b = static_cast<VertexId>(std::max(u, v));
    pairs.emplace_back(a, b);
  }

  std::sort(pairs.begin(), pairs.end());
  auto last = std::unique(pairs.begin(), pairs.end());
  rep.duplicates_dropped = static_cast<std::uint64_t>(pairs.end() - last);
  pairs.erase(last, pairs.end());

  const auto n = static_cast<VertexId>(max_id + 1);
  std::vector<std::size_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (auto [a, b] : pairs) {
    ++offsets[a + 1];
    ++offsets[b + 1];
  }
  for (std::size_t v = 1; v <= n; ++v) offsets[v] += offsets[v - 1];

  // Filling in sorted-pair order leaves each row sorted: a row's partners
  // below it all arrive before its partners above it, each group ascending.
  std::vector<VertexId> neighbors(offsets[n]);
  std::vector<VertexId> sources(offsets[n]);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (auto [a, b] : pairs) {
    neighbors[cursor[a]] = b;
    sources[cursor[a]++] = a;
    neighbors[cursor[b]] = a;
    sources[cursor[b]++] = b;
  }

  if (report != nullptr) *report = rep;
  return Graph(std::move(offsets), std::move(neighbors), std::move(sources));
}

namespace {

// Shared core of induced_subgraph/restrict_subgraph: verts must be sorted
// and unique, all < g.num_vertices().
Graph induce_local(const Graph& g, std::span<const VertexId> verts) {
  const std::size_t k = verts.size();
  std::vector<std::size_t> offsets(k + 1, 0);
  std::vector<VertexId> neighbors;
  std::vector<VertexId> sources;

  // First pass counts, second pass fills; membership by binary search on the
  // sorted id list, which also yields the local id.
  for (std::size_t i = 0; i < k; ++i) {
    for (VertexId w : g.neighbors(verts[i])) {
      if (std::binary_search(verts.begin(), verts.end(), w)) ++offsets[i + 1];
    }
  }
  for (std::size_t i = 1; i <= k; ++i) offsets[i] += offsets[i - 1];
  neighbors.resize(offsets[k]);
  sources.resize(offsets[k]);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (VertexId w : g.neighbors(verts[i])) {
      auto it = std::lower_bound(verts.begin(), verts.end(), w);
      if (it != verts.end() && *it == w) {
        neighbors[pos] = static_cast<VertexId>(it - verts.begin());
        sources[pos++] = static_cast<VertexId>(i);
      }
    }
  }
  return Graph(std::move(offsets), std::move(neighbors), std::move(sources));
}

}  // namespace

Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertex_ids) {
  std::vector<VertexId> verts(vertex_ids.begin(), vertex_ids.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (!verts.empty() && verts.back() >= g.num_vertices()) {
    throw std::invalid_argument("induced_subgraph: vertex id " + std::to_string(verts.back()) +
                                " outside graph with " + std::to_string(g.num_vertices()) +
                                " vertices");
  }
  Subgraph sub;
  sub.local_graph = induce_local(g, verts);
  sub.parent_vertex_ids = std::move(verts);
  return sub;
}

Subgraph restrict_subgraph(const Subgraph& sub, std::span<const VertexId> local_ids) {
  assert(std::is_sorted(local_ids.begin(), local_ids.end()));
  Subgraph child;
  child.parent_vertex_ids.reserve(local_ids.size());
  for (VertexId local : local_ids) {
    assert(local < sub.parent_vertex_ids.size());
    child.parent_vertex_ids.push_back(sub.parent_vertex_ids[local]);
  }
  child.local_graph = induce_local(sub.local_graph, local_ids);
  return child;
}

std::vector<std::vector<VertexId>> connected_components(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<std::vector<VertexId>> components;
  std::vector<bool> visited(n, false);
  std::vector<VertexId> stack;
  for (VertexId start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<VertexId> comp;
    visited[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (VertexId w : g.neighbors(v)) {
        if (!visited[w]) {
          visited[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

bool is_connected(const Graph& g) {
  const VertexId n = g.num_vertices();
  if (n <= 1) return true;
  std::vector<bool> visited(n, false);
  std::vector<VertexId> stack{0};
  visited[0] = true;
  VertexId seen = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(v)) {
      if (!visited[w]) {
        visited[w] = true;
        ++seen;
        stack.push_back(w);
      }
    }
  }
  return seen == n;
}

}  // namespace wellclust
