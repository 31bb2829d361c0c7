#include "corecrest/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "corecrest/errors.hpp"

namespace corecrest {

TierAssignment tier_classify(const CitationGraph& graph, const Clustering& clustering) {
    TierAssignment out;
    std::vector<std::uint8_t> in_cluster(graph.node_count(), 0);
    std::unordered_map<NodeId, std::uint32_t> tier1;
    std::vector<std::uint32_t> intra;
    std::vector<std::uint32_t> ranked;
    for (const Cluster& c : clustering.clusters) {
        if (c.members.empty()) continue;
        for (NodeId v : c.members) in_cluster[v] = 1;
        intra.clear();
        for (NodeId v : c.members) {
            std::uint32_t deg = 0;
            for (NodeId u : graph.in_neighbors(v))
                if (in_cluster[u]) ++deg;
            intra.push_back(deg);
        }
        // Nearest-rank decile: the cutoff is the t-th largest value with
        // t = ceil(|C|/10); everything tied with it is tier 1.
        std::size_t t = (c.members.size() + 9) / 10;
        ranked = intra;
        std::nth_element(ranked.begin(), ranked.begin() + (t - 1), ranked.end(),
                         std::greater<std::uint32_t>());
        std::uint32_t cutoff = ranked[t - 1];
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            TierRow row;
            row.cluster_id = c.id;
            row.node = c.members[i];
            row.intra_in_degree = intra[i];
            row.tier = intra[i] >= cutoff ? 1 : 0;
            if (row.tier) ++tier1[row.node];
            out.rows.push_back(row);
        }
        for (NodeId v : c.members) in_cluster[v] = 0;
    }
    out.tier1_counts.assign(tier1.begin(), tier1.end());
    std::sort(out.tier1_counts.begin(), out.tier1_counts.end());
    return out;
}

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

MarkerSet load_markers(const std::string& path, const CitationGraph& graph) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open marker file: " + path);
    MarkerSet out;
    std::unordered_set<std::string> missing;
    std::string line;
    while (std::getline(in, line)) {
        std::string key = trimmed(line);
        if (key.empty() || key[0] == '#') continue;
        ++out.file_rows;
        if (auto id = graph.find(key)) {
            out.nodes.push_back(*id);
        } else if (missing.insert(key).second) {
            out.unresolved.push_back(key);
        }
    }
    std::sort(out.nodes.begin(), out.nodes.end());
    out.nodes.erase(std::unique(out.nodes.begin(), out.nodes.end()), out.nodes.end());
    return out;
}

MarkerReport marker_report(const Clustering& clustering, const MarkerSet& markers) {
    MarkerReport out;
    out.resolved = markers.nodes.size();
    out.zero_denominator = out.resolved == 0;
    std::unordered_set<NodeId> marker_set(markers.nodes.begin(), markers.nodes.end());
    std::unordered_set<NodeId> covered;
    for (const Cluster& c : clustering.clusters) {
        MarkerClusterRow row;
        row.cluster_id = c.id;
        for (NodeId v : c.members) {
            if (marker_set.count(v)) {
                ++row.marker_count;
                covered.insert(v);
            }
        }
        row.percent_of_resolved =
            out.resolved ? 100.0 * double(row.marker_count) / double(out.resolved) : 0.0;
        if (row.marker_count) ++out.clusters_with_markers;
        out.rows.push_back(row);
    }
    out.covered = covered.size();
    return out;
}

namespace {

// idx-th smallest of the conceptual value list: `zeros` leading zeros, then
// the sorted non-zero values.
double value_at(const std::vector<double>& sorted_nonzero, std::size_t zeros, std::size_t idx) {
    return idx < zeros ? 0.0 : sorted_nonzero[idx - zeros];
}

}  // namespace

OverlapGraph overlap_graph(const Clustering& clustering, const OverlapGraphOptions& options) {
    OverlapGraph out;
    const auto& clusters = clustering.clusters;
    std::size_t k = clusters.size();

    // Inverted index: (member, cluster index) sorted by member groups the
    // clusters sharing each node, so only intersecting pairs are touched.
    std::vector<std::pair<NodeId, std::uint32_t>> memberships;
    for (std::uint32_t i = 0; i < k; ++i)
        for (NodeId v : clusters[i].members) memberships.emplace_back(v, i);
    std::sort(memberships.begin(), memberships.end());

    std::unordered_map<std::uint64_t, std::uint64_t> inter;
    for (std::size_t lo = 0; lo < memberships.size();) {
        std::size_t hi = lo;
        while (hi < memberships.size() && memberships[hi].first == memberships[lo].first) ++hi;
        for (std::size_t a = lo; a < hi; ++a)
            for (std::size_t b = a + 1; b < hi; ++b)
                ++inter[(std::uint64_t(memberships[a].second) << 32) | memberships[b].second];
        lo = hi;
    }
    out.overlapping_pairs = inter.size();

    if (inter.empty()) {
        for (const Cluster& c : clusters) out.isolated.push_back(c.id);
        std::sort(out.isolated.begin(), out.isolated.end());
        return out;
    }

    struct Pair {
        std::uint32_t i, j;
        double jc;
    };
    std::vector<Pair> pairs;
    std::vector<double> values;
    for (const auto& [key, count] : inter) {
        std::uint32_t i = std::uint32_t(key >> 32);
        std::uint32_t j = std::uint32_t(key & 0xffffffffu);
        std::uint64_t uni = clusters[i].members.size() + clusters[j].members.size() - count;
        double jc = double(count) / double(uni);
        pairs.push_back({i, j, jc});
        values.push_back(jc);
    }
    std::sort(values.begin(), values.end());

    std::size_t zeros = 0;
    if (options.median_includes_zeros) zeros = k * (k - 1) / 2 - values.size();
    std::size_t n = zeros + values.size();
    double median;
    if (n % 2 == 1)
        median = value_at(values, zeros, n / 2);
    else
        median = (value_at(values, zeros, n / 2 - 1) + value_at(values, zeros, n / 2)) / 2.0;
    out.threshold = median;
    out.threshold_defined = true;

    for (const Pair& p : pairs) {
        if (p.jc > median) {
            OverlapEdge e;
            e.a = std::min(clusters[p.i].id, clusters[p.j].id);
            e.b = std::max(clusters[p.i].id, clusters[p.j].id);
            e.weight = p.jc;
            out.edges.push_back(e);
        }
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const OverlapEdge& x, const OverlapEdge& y) {
                  return x.a != y.a ? x.a < y.a : x.b < y.b;
              });

    std::unordered_set<std::uint32_t> connected;
    for (const OverlapEdge& e : out.edges) {
        connected.insert(e.a);
        connected.insert(e.b);
    }
    for (const Cluster& c : clusters)
        (connected.count(c.id) ? out.nodes : out.isolated).push_back(c.id);
    std::sort(out.nodes.begin(), out.nodes.end());
    std::sort(out.isolated.begin(), out.isolated.end());
    return out;
}

}  // namespace corecrest
