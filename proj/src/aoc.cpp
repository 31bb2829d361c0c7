#include "corecrest/aoc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

namespace corecrest {

namespace {

void sort_candidates(const CitationGraph& graph, std::vector<NodeId>& nodes) {
    std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
        auto da = graph.total_degree(a);
        auto db = graph.total_degree(b);
        if (da != db) return da > db;
        return a < b;
    });
}

}  // namespace

CandidateSet candidates_from_members(const CitationGraph& graph, const Clustering& clustering) {
    CandidateSet set;
    set.strategy = CandidateStrategy::non_singleton_members;
    auto counts = assignment_counts(clustering);
    for (NodeId v = 0; v < counts.size(); ++v) {
        if (counts[v] > 0) set.nodes.push_back(v);
    }
    sort_candidates(graph, set.nodes);
    return set;
}

CandidateSet candidates_top_singletons(const CitationGraph& graph, const Clustering& clustering,
                                       double percent) {
    if (percent < 0.0 || percent > 100.0) {
        throw ConfigError("singleton percentage must lie in [0, 100]");
    }
    CandidateSet set;
    set.strategy = CandidateStrategy::top_percent_singletons;
    const std::size_t n = graph.node_count();
    const auto keep = static_cast<std::size_t>(
        std::ceil(percent / 100.0 * static_cast<double>(n)));
    if (keep == 0 || n == 0) return set;

    // Degree of the keep-th node in the global descending order is the
    // cutoff; every node at or above it is in the top set.
    std::vector<std::uint32_t> degrees(n);
    for (NodeId v = 0; v < n; ++v) degrees[v] = graph.total_degree(v);
    std::vector<std::uint32_t> sorted = degrees;
    std::nth_element(sorted.begin(), sorted.begin() + (keep - 1), sorted.end(),
                     std::greater<>());
    const std::uint32_t cutoff = sorted[keep - 1];

    auto counts = assignment_counts(clustering);
    for (NodeId v = 0; v < n; ++v) {
        if (degrees[v] >= cutoff && counts[v] == 0) set.nodes.push_back(v);
    }
    sort_candidates(graph, set.nodes);
    return set;
}

CandidateSet candidates_from_file(const CitationGraph& graph, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open candidate file: " + path);
    CandidateSet set;
    set.strategy = CandidateStrategy::explicit_file;
    std::vector<char> seen(graph.node_count(), 0);
    std::string line;
    while (std::getline(in, line)) {
        std::string_view sv = line;
        while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ' || sv.back() == '\t')) {
            sv.remove_suffix(1);
        }
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
        if (sv.empty() || sv.front() == '#') continue;
        auto node = graph.find(sv);
        if (!node) {
            set.unknown_key_warnings++;
            continue;
        }
        if (!seen[*node]) {
            seen[*node] = 1;
            set.nodes.push_back(*node);
        }
    }
    sort_candidates(graph, set.nodes);
    return set;
}

namespace {

struct ExpansionOutput {
    Cluster cluster;
    std::vector<AdmissionDecision> decisions;
};

ExpansionOutput expand_cluster(const CitationGraph& graph, const Cluster& original,
                               const CandidateSet& candidates, MembershipCriterion criterion,
                               const AocOptions& options) {
    ExpansionOutput out;
    const std::uint64_t m = graph.undirected_edge_count();
    // MCD comes from the original members, once, and never moves during the
    // expansion; an aoc_m cluster keeps it as its reported MCD.
    const std::uint32_t mcd = mcd_of(graph, original.members);
    const std::uint32_t threshold =
        criterion.kind == MembershipCriterion::Kind::aoc_m ? mcd : criterion.k;

    std::vector<char> in_expansion(graph.node_count(), 0);
    std::vector<char> in_original(graph.node_count(), 0);
    std::uint64_t internal = 0;  // undirected edges inside the expansion
    std::uint64_t degree_sum = 0;
    std::vector<NodeId> members = original.members;
    for (NodeId v : members) {
        in_original[v] = 1;
        in_expansion[v] = 1;
        degree_sum += graph.undirected_degree(v);
    }
    for (NodeId v : members) {
        for (NodeId w : graph.neighbors(v)) internal += in_expansion[w];
    }
    internal /= 2;

    for (NodeId v : candidates.nodes) {
        if (in_expansion[v]) continue;
        std::uint32_t in_current = 0;
        std::uint32_t in_frozen = 0;
        for (NodeId w : graph.neighbors(v)) {
            in_current += in_expansion[w];
            in_frozen += in_original[w];
        }
        const std::uint32_t reference = options.frozen_reference ? in_frozen : in_current;
        const bool degree_pass = reference >= threshold;

        const std::uint64_t next_internal = internal + in_current;
        const std::uint64_t next_degree = degree_sum + graph.undirected_degree(v);
        const double frac = static_cast<double>(next_degree) / (2.0 * static_cast<double>(m));
        const double q = static_cast<double>(next_internal) / static_cast<double>(m) - frac * frac;
        const bool modularity_pass = q > 0.0;

        const bool admitted = degree_pass && modularity_pass;
        if (options.record_decisions) {
            out.decisions.push_back({original.id, v, reference, threshold, q,
                                     degree_pass, modularity_pass, admitted});
        }
        if (admitted) {
            in_expansion[v] = 1;
            internal = next_internal;
            degree_sum = next_degree;
            members.push_back(v);
        }
    }

    std::sort(members.begin(), members.end());
    out.cluster.id = original.id;
    out.cluster.meta.extraction_k = original.meta.extraction_k;
    out.cluster.meta.provenance = criterion.kind == MembershipCriterion::Kind::aoc_m
                                      ? Provenance::aoc_m
                                      : Provenance::aoc_k;
    // aoc_m admissions all clear the MCD bar, so the original MCD remains
    // the cluster's MCD; under aoc_k the floor genuinely moves and gets
    // measured on the expanded member set.
    out.cluster.meta.mcd = criterion.kind == MembershipCriterion::Kind::aoc_m
                               ? mcd
                               : mcd_of(graph, members);
    out.cluster.meta.modularity = cluster_modularity(graph, members);
    out.cluster.members = std::move(members);
    return out;
}

}  // namespace

AocResult aoc(const CitationGraph& graph, const Clustering& clustering,
              const CandidateSet& candidates, MembershipCriterion criterion,
              const AocOptions& options) {
    if (criterion.k == 0) throw ConfigError("aoc requires k >= 1");
    if (clustering.ikc_k && *clustering.ikc_k != criterion.k) {
        throw ConfigError("criterion k=" + std::to_string(criterion.k) +
                          " does not match the clustering's k=" +
                          std::to_string(*clustering.ikc_k));
    }
    auto counts = assignment_counts(clustering);
    for (auto c : counts) {
        if (c > 1) throw InputError("aoc input clustering must be disjoint");
    }

    const std::size_t cluster_count = clustering.clusters.size();
    std::vector<ExpansionOutput> outputs(cluster_count);
    const unsigned threads = std::max(1u, options.threads);
    if (threads == 1 || cluster_count <= 1) {
        for (std::size_t i = 0; i < cluster_count; ++i) {
            outputs[i] = expand_cluster(graph, clustering.clusters[i], candidates, criterion,
                                        options);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= cluster_count) return;
                outputs[i] = expand_cluster(graph, clustering.clusters[i], candidates,
                                            criterion, options);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    AocResult result;
    result.clustering.graph_fingerprint = clustering.graph_fingerprint;
    result.clustering.graph_nodes = clustering.graph_nodes;
    result.clustering.ikc_k = clustering.ikc_k;
    for (auto& out : outputs) {
        result.clustering.clusters.push_back(std::move(out.cluster));
        result.decisions.insert(result.decisions.end(), out.decisions.begin(),
                                out.decisions.end());
    }
    return result;
}

MultiAssignmentReport multi_assignment_report(const Clustering& clustering,
                                              const CitationGraph& graph) {
    MultiAssignmentReport report;
    auto counts = assignment_counts(clustering);
    for (NodeId v = 0; v < counts.size(); ++v) {
        if (counts[v] == 0) continue;
        report.histogram[counts[v]]++;
        auto group = static_cast<std::size_t>(
            DegreeGroupReport::group_of(graph.total_degree(v)));
        report.by_degree_group[group][counts[v]]++;
    }
    return report;
}

ClusterGrowthReport cluster_growth_report(const Clustering& before, const Clustering& after) {
    if (before.clusters.size() != after.clusters.size()) {
        throw InputError("cluster growth report needs matching cluster ids");
    }
    std::map<std::uint32_t, std::uint64_t> before_sizes;
    for (const auto& c : before.clusters) before_sizes[c.id] = c.members.size();

    ClusterGrowthReport report;
    for (const auto& c : after.clusters) {
        auto it = before_sizes.find(c.id);
        if (it == before_sizes.end()) {
            throw InputError("cluster growth report needs matching cluster ids");
        }
        ClusterGrowthRow row;
        row.cluster_id = c.id;
        row.size_before = it->second;
        row.size_after = c.members.size();
        row.percent_increase =
            100.0 * (static_cast<double>(row.size_after) - static_cast<double>(row.size_before)) /
            static_cast<double>(row.size_before);
        if (row.size_after == row.size_before) {
            report.unchanged++;
        } else {
            report.increased++;
        }
        report.rows.push_back(row);
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const auto& a, const auto& b) { return a.cluster_id < b.cluster_id; });
    return report;
}

}  // namespace corecrest
