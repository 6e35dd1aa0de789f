#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace wellclust {

using VertexId = std::uint32_t;

/// Counters reported by graph construction.
struct BuildReport {
  std::uint64_t input_pairs = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_dropped = 0;
};

/// Immutable undirected simple graph in double-index layout: CSR row
/// pointers plus a flat edge-to-source array parallel to the neighbor
/// array. The endpoint pair of edge slot i is
/// (edge_source_array()[i], neighbor_array()[i]) in O(1).
///
/// Each undirected edge occupies two slots, one per direction. Within a
/// vertex's range the neighbor entries are sorted ascending, so membership
/// tests are binary searches. Instances are immutable after construction
/// and safe to share across threads.
class Graph {
 public:
  Graph() = default;

  /// Adopts prebuilt arrays. The caller is responsible for the double-index
  /// invariants (non-decreasing offsets, per-row sorted neighbors, symmetric
  /// simple edges, edge_sources[i] matching the row containing slot i).
  /// Prefer build_graph() for untrusted input.
  Graph(std::vector<std::size_t> neighbor_offsets, std::vector<VertexId> neighbors,
        std::vector<VertexId> edge_sources);

  VertexId num_vertices() const { return num_vertices_; }
  /// Number of undirected edges (half the neighbor-array length).
  std::size_t num_edges() const { return neighbors_.size() / 2; }
  std::size_t num_edge_slots() const { return neighbors_.size(); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + neighbor_offsets_[v],
            neighbors_.data() + neighbor_offsets_[v + 1]};
  }
  std::uint32_t degree(VertexId v) const {
    return static_cast<std::uint32_t>(neighbor_offsets_[v + 1] - neighbor_offsets_[v]);
  }
  bool has_edge(VertexId u, VertexId v) const;

  /// Endpoints of edge slot i as (source, destination).
  std::pair<VertexId, VertexId> edge_at(std::size_t i) const {
    return {edge_sources_[i], neighbors_[i]};
  }

  const std::vector<std::size_t>& neighbor_offsets() const { return neighbor_offsets_; }
  const std::vector<VertexId>& neighbor_array() const { return neighbors_; }
  const std::vector<VertexId>& edge_source_array() const { return edge_sources_; }

 private:
  VertexId num_vertices_ = 0;
  std::vector<std::size_t> neighbor_offsets_{0};  // size num_vertices_ + 1
  std::vector<VertexId> neighbors_;
  std::vector<VertexId> edge_sources_;
};

/// Canonicalizes an arbitrary pair list into a Graph: drops self-loops and
/// duplicate edges (in either orientation), symmetrizes, and sorts each
/// adjacency row. The vertex space is 0..max_id even if some ids are unused;
/// an empty list yields the empty graph. Negative ids raise
/// std::invalid_argument naming the offending record index.
Graph build_graph(const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                  BuildReport* report = nullptr);

/// A vertex subset of a parent graph with locally relabeled induced edges.
/// parent_vertex_ids is strictly increasing, so local id i corresponds to
/// global id parent_vertex_ids[i] and the mapping is monotone.
struct Subgraph {
  std::vector<VertexId> parent_vertex_ids;
  Graph local_graph;

  std::size_t size() const { return parent_vertex_ids.size(); }
};

/// Extracts the subgraph induced by vertex_ids (deduplicated; order
/// irrelevant). Ids outside the parent raise std::invalid_argument.
Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertex_ids);

/// Restricts a subgraph to a subset given in its local id space.
/// local_ids must be sorted ascending and duplicate-free.
Subgraph restrict_subgraph(const Subgraph& sub, std::span<const VertexId> local_ids);

/// Partition of 0..n-1 into maximal connected sets, each sorted ascending,
/// ordered by smallest member.
std::vector<std::vector<VertexId>> connected_components(const Graph& g);

/// True when the graph has at most one vertex or all vertices are reachable
/// from vertex 0.
bool is_connected(const Graph& g);

}  // namespace wellclust
