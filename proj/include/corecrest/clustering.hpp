// Cluster containers shared by the IKC and AOC stages, the per-cluster
// modularity score, and summary statistics.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corecrest/graph.hpp"

namespace corecrest {

enum class Provenance { ikc, aoc_m, aoc_k };

const char* provenance_name(Provenance p);

struct ClusterMeta {
    std::uint32_t extraction_k = 0;
    std::uint32_t mcd = 0;
    double modularity = 0.0;
    Provenance provenance = Provenance::ikc;
};

struct Cluster {
    std::uint32_t id = 0;
    std::vector<NodeId> members;  // sorted ascending
    ClusterMeta meta;
};

struct Clustering {
    std::vector<Cluster> clusters;
    std::uint64_t graph_fingerprint = 0;
    std::size_t graph_nodes = 0;
    // k the clustering was extracted with, when known.
    std::optional<std::uint32_t> ikc_k;
};

// Newman's single-community contribution on the undirected view:
//   Q(C) = l_C / m - (d_C / 2m)^2
// with m the graph's undirected edge count, l_C the undirected edges inside
// members, d_C the sum of undirected degrees of members. Throws
// UndefinedModularityError when m = 0.
double cluster_modularity(const CitationGraph& graph, std::span<const NodeId> members);

// Minimum induced undirected degree over members (0 for a single node).
std::uint32_t mcd_of(const CitationGraph& graph, std::span<const NodeId> members);

// Number of clusters each node belongs to, indexed by NodeId.
std::vector<std::uint32_t> assignment_counts(const Clustering& clustering);

// Nodes in no cluster, ascending.
std::vector<NodeId> singleton_nodes(const Clustering& clustering);

struct ClusteringStats {
    std::size_t cluster_count = 0;
    std::uint64_t nodes_clustered = 0;  // distinct nodes in >= 1 cluster
    double coverage = 0.0;              // nodes_clustered / graph nodes
    std::uint64_t size_min = 0, size_max = 0;
    double size_median = 0.0;
    std::uint32_t mcd_min = 0, mcd_max = 0;
    double mcd_median = 0.0;
};

// Median of an even count is the mean of the two middle values.
ClusteringStats clustering_stats(const Clustering& clustering);

}  // namespace corecrest
