// Core-number computation on the undirected view, k-core component
// extraction restricted to node subsets, and connected components.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "corecrest/graph.hpp"

namespace corecrest {

struct CoreDecomposition {
    // Indexed by NodeId; nodes outside the requested subset stay 0.
    std::vector<std::uint32_t> core_number;
    std::uint32_t degeneracy = 0;
};

// Bucket peeling over all nodes. O(n + m).
CoreDecomposition core_numbers(const CitationGraph& graph);

// Peels the subgraph induced by subset; degrees are induced degrees.
CoreDecomposition core_numbers(const CitationGraph& graph, std::span<const NodeId> subset);

// Maximal sub-node-set of subset with induced undirected degree >= k, split
// into connected components. Components sorted by size descending, ties by
// minimum id; members sorted ascending. k=0 would return everything, so k
// must be positive.
std::vector<std::vector<NodeId>> k_core_components(const CitationGraph& graph,
                                                   std::span<const NodeId> subset,
                                                   std::uint32_t k);

// Weakly connected components of the induced subgraph, same ordering rule.
std::vector<std::vector<NodeId>> connected_components(const CitationGraph& graph,
                                                      std::span<const NodeId> subset);

}  // namespace corecrest
