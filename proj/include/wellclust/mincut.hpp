#pragma once

#include <cstdint>
#include <vector>

#include "wellclust/graph.hpp"

namespace wellclust {

/// Global minimum edge cut together with the bipartition realizing it.
/// side_one always contains vertex 0; both sides are sorted ascending and
/// non-empty, and for a minimum cut of a connected graph each side induces
/// a connected subgraph.
struct MinCutResult {
  std::int64_t cut_weight = 0;
  std::vector<VertexId> side_one;
  std::vector<VertexId> side_two;
};

/// Exact global minimum cut via Stoer-Wagner maximum-adjacency phases with
/// contraction. Deterministic: phases start from the smallest live vertex
/// and ties in the adjacency ordering go to the smaller id.
///
/// Requires a connected graph with at least 2 vertices; a disconnected
/// input raises std::logic_error (callers are expected to have split
/// components first), fewer than 2 vertices std::invalid_argument.
MinCutResult global_min_cut(const Graph& g);

/// Test oracle: enumerates all 2^(n-1)-1 bipartitions and returns the
/// minimum-weight one, tie-broken to the lexicographically least side
/// containing vertex 0. Refuses n > 20.
MinCutResult brute_force_min_cut(const Graph& g);

}  // namespace wellclust
