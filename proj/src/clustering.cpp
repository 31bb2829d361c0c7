#include "corecrest/clustering.hpp"

#include <algorithm>

namespace corecrest {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::ikc: return "ikc";
        case Provenance::aoc_m: return "aoc_m";
        case Provenance::aoc_k: return "aoc_k";
    }
    return "?";
}

double cluster_modularity(const CitationGraph& graph, std::span<const NodeId> members) {
    const std::uint64_t m = graph.undirected_edge_count();
    if (m == 0) throw UndefinedModularityError("modularity undefined: graph has no edges");
    std::vector<char> in(graph.node_count(), 0);
    for (NodeId v : members) in[v] = 1;
    std::uint64_t internal_twice = 0;
    std::uint64_t degree_sum = 0;
    for (NodeId v : members) {
        for (NodeId w : graph.neighbors(v)) internal_twice += in[w];
        degree_sum += graph.undirected_degree(v);
    }
    const double frac = static_cast<double>(degree_sum) / (2.0 * static_cast<double>(m));
    return static_cast<double>(internal_twice / 2) / static_cast<double>(m) - frac * frac;
}

std::uint32_t mcd_of(const CitationGraph& graph, std::span<const NodeId> members) {
    if (members.empty()) return 0;
    std::vector<char> in(graph.node_count(), 0);
    for (NodeId v : members) in[v] = 1;
    std::uint32_t mcd = std::numeric_limits<std::uint32_t>::max();
    for (NodeId v : members) {
        std::uint32_t d = 0;
        for (NodeId w : graph.neighbors(v)) d += in[w];
        mcd = std::min(mcd, d);
    }
    return mcd;
}

std::vector<std::uint32_t> assignment_counts(const Clustering& clustering) {
    std::vector<std::uint32_t> counts(clustering.graph_nodes, 0);
    for (const auto& cluster : clustering.clusters) {
        for (NodeId v : cluster.members) counts[v]++;
    }
    return counts;
}

std::vector<NodeId> singleton_nodes(const Clustering& clustering) {
    auto counts = assignment_counts(clustering);
    std::vector<NodeId> singles;
    for (NodeId v = 0; v < counts.size(); ++v) {
        if (counts[v] == 0) singles.push_back(v);
    }
    return singles;
}

namespace {

double median_of(std::vector<std::uint64_t> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n % 2 == 1) return static_cast<double>(values[n / 2]);
    return (static_cast<double>(values[n / 2 - 1]) + static_cast<double>(values[n / 2])) / 2.0;
}

}  // namespace

ClusteringStats clustering_stats(const Clustering& clustering) {
    ClusteringStats stats;
    stats.cluster_count = clustering.clusters.size();
    auto counts = assignment_counts(clustering);
    for (auto c : counts) stats.nodes_clustered += (c > 0);
    stats.coverage = clustering.graph_nodes == 0
                         ? 0.0
                         : static_cast<double>(stats.nodes_clustered) /
                               static_cast<double>(clustering.graph_nodes);
    if (stats.cluster_count == 0) return stats;

    std::vector<std::uint64_t> sizes, mcds;
    for (const auto& cluster : clustering.clusters) {
        sizes.push_back(cluster.members.size());
        mcds.push_back(cluster.meta.mcd);
    }
    stats.size_min = *std::min_element(sizes.begin(), sizes.end());
    stats.size_max = *std::max_element(sizes.begin(), sizes.end());
    stats.size_median = median_of(sizes);
    stats.mcd_min = static_cast<std::uint32_t>(*std::min_element(mcds.begin(), mcds.end()));
    stats.mcd_max = static_cast<std::uint32_t>(*std::max_element(mcds.begin(), mcds.end()));
    stats.mcd_median = median_of(mcds);
    return stats;
}

}  // namespace corecrest
