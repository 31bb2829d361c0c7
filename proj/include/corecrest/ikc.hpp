// Iterative K-core Clustering: repeatedly extract the components of the
// top-degeneracy core from the remaining nodes, keep the positive-modularity
// ones, stop when the remainder's degeneracy drops below k.
#pragma once

#include <cstdint>
#include <vector>

#include "corecrest/clustering.hpp"
#include "corecrest/graph.hpp"

namespace corecrest {

// A top-core component whose modularity was <= 0; removed from the working
// set like any other extracted node, but not emitted as a cluster.
struct RejectedComponent {
    std::vector<NodeId> members;
    std::uint32_t extraction_k = 0;
    double modularity = 0.0;
};

struct IkcResult {
    Clustering clustering;
    std::vector<RejectedComponent> rejected;
};

IkcResult ikc(const CitationGraph& graph, std::uint32_t k);

}  // namespace corecrest
