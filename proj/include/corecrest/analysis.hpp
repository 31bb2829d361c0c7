// Downstream analyses over a finished clustering: tier classification by
// intra-cluster citations, marker enrichment, and the cluster overlap graph.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "corecrest/clustering.hpp"
#include "corecrest/graph.hpp"

namespace corecrest {

struct TierRow {
    std::uint32_t cluster_id = 0;
    NodeId node = 0;
    std::uint32_t intra_in_degree = 0;  // citations received from co-members
    std::uint8_t tier = 0;              // 1 = top decile within the cluster
};

struct TierAssignment {
    // Rows in cluster order, members ascending within a cluster.
    std::vector<TierRow> rows;
    // (node, number of clusters where it is tier 1), ascending by node,
    // only nodes with a non-zero count.
    std::vector<std::pair<NodeId, std::uint32_t>> tier1_counts;
};

// Ranks each cluster member by in-degree restricted to co-members.
// A member is tier 1 when its intra-cluster in-degree reaches the value at
// nearest-rank position ceil(|C|/10) from the top; ties at that value are
// all included, so a non-empty cluster always has at least one tier-1 node.
TierAssignment tier_classify(const CitationGraph& graph, const Clustering& clustering);

struct MarkerSet {
    std::vector<NodeId> nodes;  // resolved against the graph, sorted, deduped
    std::size_t file_rows = 0;  // non-comment rows read
    std::vector<std::string> unresolved;  // keys absent from the graph
};

// One key per line; blank lines and #-comments skipped.
MarkerSet load_markers(const std::string& path, const CitationGraph& graph);

struct MarkerClusterRow {
    std::uint32_t cluster_id = 0;
    std::uint64_t marker_count = 0;
    double percent_of_resolved = 0.0;  // 0 when no marker resolved
};

struct MarkerReport {
    std::vector<MarkerClusterRow> rows;  // cluster order
    std::size_t resolved = 0;
    std::size_t covered = 0;  // resolved markers inside >= 1 cluster
    std::size_t clusters_with_markers = 0;
    bool zero_denominator = false;  // no marker resolved; percents forced to 0
};

// A marker counts toward every cluster holding it, so percentages can sum
// past 100 when clusters overlap.
MarkerReport marker_report(const Clustering& clustering, const MarkerSet& markers);

struct OverlapEdge {
    std::uint32_t a = 0, b = 0;  // cluster ids, a < b
    double weight = 0.0;         // Jaccard coefficient of the member sets
};

struct OverlapGraphOptions {
    // Median over all unordered cluster pairs instead of only the pairs
    // that actually intersect.
    bool median_includes_zeros = false;
};

struct OverlapGraph {
    std::vector<std::uint32_t> nodes;     // cluster ids with a retained edge
    std::vector<std::uint32_t> isolated;  // cluster ids without one
    std::vector<OverlapEdge> edges;       // weight > threshold, sorted by (a, b)
    double threshold = 0.0;
    bool threshold_defined = false;  // false when no pair intersects
    std::size_t overlapping_pairs = 0;
};

// Pairs are found through a member -> clusters inverted index, so the cost
// scales with shared membership rather than with all cluster pairs. The
// threshold is the median Jaccard value (even count: mean of the middle
// two); only strictly greater edges are kept.
OverlapGraph overlap_graph(const Clustering& clustering, const OverlapGraphOptions& options = {});

}  // namespace corecrest
