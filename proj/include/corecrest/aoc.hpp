// Assembling Overlapping Clusters: expand each cluster of a disjoint
// clustering with candidate nodes, admitting a candidate when it has enough
// neighbors in the expansion and keeps modularity positive.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corecrest/clustering.hpp"
#include "corecrest/graph.hpp"

namespace corecrest {

enum class CandidateStrategy { non_singleton_members, top_percent_singletons, explicit_file };

struct CandidateSet {
    // Sorted by total degree decreasing, ties by ascending id; no duplicates.
    std::vector<NodeId> nodes;
    CandidateStrategy strategy = CandidateStrategy::non_singleton_members;
    std::size_t unknown_key_warnings = 0;
};

// Every node that belongs to at least one cluster.
CandidateSet candidates_from_members(const CitationGraph& graph, const Clustering& clustering);

// Singleton nodes within the global top-percent by total degree. The cut
// keeps ceil(percent/100 * n) nodes plus any ties at the cutoff degree.
CandidateSet candidates_top_singletons(const CitationGraph& graph, const Clustering& clustering,
                                       double percent);

// One node key per line; keys missing from the graph are counted and skipped.
CandidateSet candidates_from_file(const CitationGraph& graph, const std::string& path);

struct MembershipCriterion {
    enum class Kind { aoc_m, aoc_k };
    Kind kind = Kind::aoc_m;
    std::uint32_t k = 0;
};

struct AocOptions {
    // Count criterion neighbors against the original members instead of the
    // growing expansion. The modularity gate always uses the expansion.
    bool frozen_reference = false;
    unsigned threads = 1;
    bool record_decisions = false;
};

// One evaluated candidate-cluster pair (original members are skipped, not
// recorded). neighbors_in_reference is the count the degree test used.
struct AdmissionDecision {
    std::uint32_t cluster_id = 0;
    NodeId node = 0;
    std::uint32_t neighbors_in_reference = 0;
    std::uint32_t threshold = 0;  // MCD(C) for aoc_m, k for aoc_k
    double modularity_if_added = 0.0;
    bool degree_pass = false;
    bool modularity_pass = false;
    bool admitted = false;
};

struct AocResult {
    Clustering clustering;
    // Concatenated per cluster in ascending cluster order; empty unless
    // options.record_decisions.
    std::vector<AdmissionDecision> decisions;
};

// Expands every cluster independently from the same input clustering.
// MCD(C) is measured on the original members once; aoc_m clusters keep that
// value as their reported MCD (new members always meet it), aoc_k clusters
// report the minimum over the expanded member set. Throws ConfigError when
// criterion.k disagrees with the clustering's k, InputError when the input
// clustering is not disjoint.
AocResult aoc(const CitationGraph& graph, const Clustering& clustering,
              const CandidateSet& candidates, MembershipCriterion criterion,
              const AocOptions& options = {});

struct MultiAssignmentReport {
    // clusters-per-node -> node count, over nodes in >= 1 cluster.
    std::map<std::uint32_t, std::uint64_t> histogram;
    std::array<std::map<std::uint32_t, std::uint64_t>, 5> by_degree_group;
};

MultiAssignmentReport multi_assignment_report(const Clustering& clustering,
                                              const CitationGraph& graph);

struct ClusterGrowthRow {
    std::uint32_t cluster_id = 0;
    std::uint64_t size_before = 0;
    std::uint64_t size_after = 0;
    double percent_increase = 0.0;
};

struct ClusterGrowthReport {
    std::vector<ClusterGrowthRow> rows;  // ascending cluster id
    std::uint64_t unchanged = 0;
    std::uint64_t increased = 0;
};

// Throws InputError when the two clusterings do not share cluster ids.
ClusterGrowthReport cluster_growth_report(const Clustering& before, const Clustering& after);

}  // namespace corecrest
