// File formats: cluster CSVs, JSON summaries and reports, edge lists, DOT
// export, and the flat key=value config files used by the pipeline command.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "corecrest/analysis.hpp"
#include "corecrest/aoc.hpp"
#include "corecrest/clustering.hpp"
#include "corecrest/graph.hpp"
#include "corecrest/ikc.hpp"
#include "corecrest/kcore.hpp"
#include "corecrest/null_models.hpp"

namespace corecrest {

inline constexpr const char* kVersion = "0.1.0";

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Rows `cluster_id,node_key[,origin]`, `#` comments and a header tolerated.
// Keys must exist in the graph; anything else is a ParseError with the line
// number. Clusters come back sorted by id, members sorted and deduplicated,
// meta zeroed (a CSV carries no mcd/modularity/extraction_k).
Clustering read_clusters_csv(const std::string& path, const CitationGraph& graph);

// Standalone variant for commands that never load the graph: keys are
// interned in first-seen order and reported alongside the clustering.
struct LoadedClustering {
    Clustering clustering;
    std::vector<std::string> keys;  // by dense id
};
LoadedClustering read_clusters_csv(const std::string& path);

void write_clusters_csv(const std::string& path, const Clustering& clustering,
                        const CitationGraph& graph);

// Adds the origin column by diffing against the pre-expansion clustering:
// original members are `core`, everything else `added`. The two clusterings
// must share their cluster ids.
void write_clusters_with_origin_csv(const std::string& path, const Clustering& clustering,
                                    const Clustering& original, const CitationGraph& graph);

// Array of {cluster_id, size, mcd, modularity, extraction_k}.
void write_summary_json(const std::string& path, const Clustering& clustering);

void write_rejected_csv(const std::string& path, const std::vector<RejectedComponent>& rejected,
                        const CitationGraph& graph);

void write_core_numbers_csv(const std::string& path, const CoreDecomposition& cores,
                            const CitationGraph& graph);

// `citing<delim>cited` rows in (source, target) id order, no header.
void write_edges(const std::string& path, const CitationGraph& graph, char delimiter = '\t');

void write_tiers_csv(const std::string& path, const TierAssignment& tiers,
                     const CitationGraph& graph);

void write_marker_report_csv(const std::string& path, const MarkerReport& report);

void write_decisions_csv(const std::string& path,
                         const std::vector<AdmissionDecision>& decisions,
                         const CitationGraph& graph);

// The JSON keeps every cluster with its isolated flag; the DOT renders only
// clusters that kept an edge.
void write_overlap_json(const std::string& path, const OverlapGraph& og);
void write_overlap_dot(const std::string& path, const OverlapGraph& og);

void write_curation_report_json(const std::string& path, const CurationReport& report);

void write_shuffle_report_json(const std::string& path, const ShuffleReport& report);

// Flat `key = value` lines, `#` comments, no sections. Later lines override
// earlier ones; values may be double-quoted.
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace corecrest
