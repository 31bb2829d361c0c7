#include "corecrest/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "corecrest/errors.hpp"

namespace corecrest {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, end);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

void write_json(const std::string& path, const ordered_json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

struct ClusterRow {
    std::size_t line = 0;
    std::uint32_t cluster_id = 0;
    std::string key;
};

// Shared scanner for both cluster readers: syntax only, no key resolution.
std::vector<ClusterRow> scan_clusters_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open cluster file: " + path);
    std::vector<ClusterRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line == "cluster_id,node_key" || line == "cluster_id,node_key,origin") continue;
        std::size_t c1 = line.find(',');
        if (c1 == std::string::npos)
            throw ParseError("expected cluster_id,node_key", line_no);
        std::size_t c2 = line.find(',', c1 + 1);
        std::string id_text = line.substr(0, c1);
        std::string key = c2 == std::string::npos ? line.substr(c1 + 1)
                                                  : line.substr(c1 + 1, c2 - c1 - 1);
        if (c2 != std::string::npos) {
            std::string origin = line.substr(c2 + 1);
            if (origin != "core" && origin != "added")
                throw ParseError("origin must be core or added, got '" + origin + "'", line_no);
        }
        ClusterRow row;
        row.line = line_no;
        std::uint32_t id = 0;
        auto [p, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
        if (ec != std::errc() || p != id_text.data() + id_text.size())
            throw ParseError("bad cluster id '" + id_text + "'", line_no);
        if (key.empty()) throw ParseError("empty node key", line_no);
        row.cluster_id = id;
        row.key = std::move(key);
        rows.push_back(std::move(row));
    }
    return rows;
}

Clustering assemble(std::map<std::uint32_t, std::vector<NodeId>>&& members) {
    Clustering cl;
    for (auto& [id, nodes] : members) {
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        Cluster c;
        c.id = id;
        c.members = std::move(nodes);
        cl.clusters.push_back(std::move(c));
    }
    return cl;
}

}  // namespace

Clustering read_clusters_csv(const std::string& path, const CitationGraph& graph) {
    std::map<std::uint32_t, std::vector<NodeId>> members;
    for (const ClusterRow& row : scan_clusters_csv(path)) {
        auto id = graph.find(row.key);
        if (!id) throw ParseError("unknown node key '" + row.key + "'", row.line);
        members[row.cluster_id].push_back(*id);
    }
    Clustering cl = assemble(std::move(members));
    cl.graph_fingerprint = graph.fingerprint();
    cl.graph_nodes = graph.node_count();
    return cl;
}

LoadedClustering read_clusters_csv(const std::string& path) {
    LoadedClustering out;
    std::unordered_map<std::string, NodeId> index;
    std::map<std::uint32_t, std::vector<NodeId>> members;
    for (const ClusterRow& row : scan_clusters_csv(path)) {
        auto [it, fresh] = index.emplace(row.key, NodeId(out.keys.size()));
        if (fresh) out.keys.push_back(row.key);
        members[row.cluster_id].push_back(it->second);
    }
    out.clustering = assemble(std::move(members));
    out.clustering.graph_nodes = out.keys.size();
    return out;
}

void write_clusters_csv(const std::string& path, const Clustering& clustering,
                        const CitationGraph& graph) {
    auto out = open_out(path);
    out << "cluster_id,node_key\n";
    for (const Cluster& c : clustering.clusters)
        for (NodeId v : c.members) out << c.id << ',' << graph.key(v) << '\n';
}

void write_clusters_with_origin_csv(const std::string& path, const Clustering& clustering,
                                    const Clustering& original, const CitationGraph& graph) {
    std::unordered_map<std::uint32_t, const Cluster*> by_id;
    for (const Cluster& c : original.clusters) by_id[c.id] = &c;
    auto out = open_out(path);
    out << "cluster_id,node_key,origin\n";
    for (const Cluster& c : clustering.clusters) {
        auto it = by_id.find(c.id);
        if (it == by_id.end())
            throw InputError("cluster " + std::to_string(c.id) + " missing from the original clustering");
        const auto& base = it->second->members;
        for (NodeId v : c.members) {
            bool core = std::binary_search(base.begin(), base.end(), v);
            out << c.id << ',' << graph.key(v) << ',' << (core ? "core" : "added") << '\n';
        }
    }
}

void write_summary_json(const std::string& path, const Clustering& clustering) {
    ordered_json arr = ordered_json::array();
    for (const Cluster& c : clustering.clusters) {
        arr.push_back({{"cluster_id", c.id},
                       {"size", c.members.size()},
                       {"mcd", c.meta.mcd},
                       {"modularity", c.meta.modularity},
                       {"extraction_k", c.meta.extraction_k}});
    }
    write_json(path, arr);
}

void write_rejected_csv(const std::string& path, const std::vector<RejectedComponent>& rejected,
                        const CitationGraph& graph) {
    auto out = open_out(path);
    out << "component_id,node_key,extraction_k,modularity\n";
    for (std::size_t i = 0; i < rejected.size(); ++i) {
        const RejectedComponent& r = rejected[i];
        for (NodeId v : r.members)
            out << i << ',' << graph.key(v) << ',' << r.extraction_k << ','
                << format_double(r.modularity) << '\n';
    }
}

void write_core_numbers_csv(const std::string& path, const CoreDecomposition& cores,
                            const CitationGraph& graph) {
    auto out = open_out(path);
    out << "node_key,core_number\n";
    for (NodeId v = 0; v < graph.node_count(); ++v)
        out << graph.key(v) << ',' << cores.core_number[v] << '\n';
}

void write_edges(const std::string& path, const CitationGraph& graph, char delimiter) {
    auto out = open_out(path);
    std::string chunk;
    chunk.reserve(1 << 20);
    graph.for_each_edge([&](NodeId u, NodeId v) {
        chunk += graph.key(u);
        chunk += delimiter;
        chunk += graph.key(v);
        chunk += '\n';
        if (chunk.size() > (1 << 20) - 256) {
            out.write(chunk.data(), std::streamsize(chunk.size()));
            chunk.clear();
        }
    });
    out.write(chunk.data(), std::streamsize(chunk.size()));
}

void write_tiers_csv(const std::string& path, const TierAssignment& tiers,
                     const CitationGraph& graph) {
    auto out = open_out(path);
    out << "cluster_id,node_key,intra_in_degree,tier\n";
    for (const TierRow& row : tiers.rows)
        out << row.cluster_id << ',' << graph.key(row.node) << ',' << row.intra_in_degree << ','
            << unsigned(row.tier) << '\n';
}

void write_marker_report_csv(const std::string& path, const MarkerReport& report) {
    auto out = open_out(path);
    out << "cluster_id,marker_count,percent_of_resolved\n";
    for (const MarkerClusterRow& row : report.rows)
        out << row.cluster_id << ',' << row.marker_count << ','
            << format_double(row.percent_of_resolved) << '\n';
}

void write_decisions_csv(const std::string& path,
                         const std::vector<AdmissionDecision>& decisions,
                         const CitationGraph& graph) {
    auto out = open_out(path);
    out << "cluster_id,node_key,neighbors_in_reference,threshold,modularity_if_added,"
           "degree_pass,modularity_pass,admitted\n";
    for (const AdmissionDecision& d : decisions)
        out << d.cluster_id << ',' << graph.key(d.node) << ',' << d.neighbors_in_reference << ','
            << d.threshold << ',' << format_double(d.modularity_if_added) << ','
            << int(d.degree_pass) << ',' << int(d.modularity_pass) << ',' << int(d.admitted)
            << '\n';
}

void write_overlap_json(const std::string& path, const OverlapGraph& og) {
    ordered_json j;
    j["edge_rule"] = "weight > threshold";
    j["threshold_defined"] = og.threshold_defined;
    if (og.threshold_defined)
        j["threshold"] = og.threshold;
    else
        j["threshold"] = nullptr;
    j["overlapping_pairs"] = og.overlapping_pairs;
    ordered_json clusters = ordered_json::array();
    // One row per cluster; isolated ones stay in the data with a flag.
    std::vector<std::pair<std::uint32_t, bool>> all;
    for (std::uint32_t id : og.nodes) all.emplace_back(id, false);
    for (std::uint32_t id : og.isolated) all.emplace_back(id, true);
    std::sort(all.begin(), all.end());
    for (auto [id, isolated] : all)
        clusters.push_back({{"cluster_id", id}, {"isolated", isolated}});
    j["clusters"] = clusters;
    ordered_json edges = ordered_json::array();
    for (const OverlapEdge& e : og.edges)
        edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}});
    j["edges"] = edges;
    write_json(path, j);
}

void write_overlap_dot(const std::string& path, const OverlapGraph& og) {
    auto out = open_out(path);
    out << "// Edges require weight strictly greater than the median Jaccard\n"
           "// threshold";
    if (og.threshold_defined) out << " (" << format_double(og.threshold) << ")";
    out << "; clusters without an edge are omitted.\n";
    out << "graph overlap {\n";
    for (std::uint32_t id : og.nodes)
        out << "  c" << id << " [label=\"" << id << "\"];\n";
    for (const OverlapEdge& e : og.edges)
        out << "  c" << e.a << " -- c" << e.b << " [label=\"" << format_double(e.weight)
            << "\"];\n";
    out << "}\n";
}

void write_curation_report_json(const std::string& path, const CurationReport& report) {
    write_json(path, ordered_json{{"nodes_removed", report.nodes_removed},
                                  {"edges_removed", report.edges_removed},
                                  {"retracted_matched", report.retracted_matched},
                                  {"high_referencing_matched", report.high_referencing_matched}});
}

void write_shuffle_report_json(const std::string& path, const ShuffleReport& report) {
    write_json(path, ordered_json{{"strata", report.strata},
                                  {"attempts", report.attempts},
                                  {"accepted", report.accepted},
                                  {"rejected_loop", report.rejected_loop},
                                  {"rejected_duplicate", report.rejected_duplicate},
                                  {"rejected_same_index", report.rejected_same_index}});
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        std::size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ParseError("empty config key", line_no);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        out[key] = value;
    }
    return out;
}

}  // namespace corecrest
