#include "corecrest/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include "corecrest/rng.hpp"

namespace corecrest {

std::optional<NodeId> CitationGraph::find(std::string_view key) const {
    if (implicit_keys_) {
        if (key.empty() || (key.size() > 1 && key[0] == '0')) return std::nullopt;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
        if (ec != std::errc{} || ptr != key.data() + key.size()) return std::nullopt;
        if (value >= n_) return std::nullopt;
        return static_cast<NodeId>(value);
    }
    auto it = key_index_.find(std::string(key));
    if (it == key_index_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t CitationGraph::memory_footprint() const {
    std::uint64_t bytes = 0;
    bytes += out_offsets_.capacity() * sizeof(std::uint64_t);
    bytes += in_offsets_.capacity() * sizeof(std::uint64_t);
    bytes += und_offsets_.capacity() * sizeof(std::uint64_t);
    bytes += out_targets_.capacity() * sizeof(NodeId);
    bytes += in_targets_.capacity() * sizeof(NodeId);
    bytes += und_targets_.capacity() * sizeof(NodeId);
    return bytes;
}

GraphBuilder GraphBuilder::with_implicit_keys(std::size_t n) {
    GraphBuilder b;
    b.implicit_ = true;
    b.implicit_n_ = n;
    return b;
}

NodeId GraphBuilder::intern(std::string_view key) {
    if (implicit_) {
        throw ConfigError("cannot intern string keys into an implicit-key builder");
    }
    auto [it, inserted] = key_index_.try_emplace(std::string(key),
                                                 static_cast<NodeId>(keys_.size()));
    if (inserted) keys_.push_back(it->first);
    return it->second;
}

void GraphBuilder::add_edge(NodeId citing, NodeId cited) {
    if (citing == cited) return;  // self-loops drop at ingest
    edges_.push_back(pack_edge(citing, cited));
}

CitationGraph GraphBuilder::build() && {
    const std::size_t n = implicit_ ? implicit_n_ : keys_.size();
    std::vector<std::uint64_t> edges = std::move(edges_);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges.shrink_to_fit();

    CitationGraph g;
    g.n_ = n;
    g.m_directed_ = edges.size();
    g.implicit_keys_ = implicit_;
    g.keys_ = std::move(keys_);
    g.key_index_ = std::move(key_index_);

    std::uint64_t edge_hash = 0;
    for (std::uint64_t code : edges) edge_hash ^= splitmix64(code);
    g.fingerprint_ = splitmix64(splitmix64(n) ^ splitmix64(edges.size() * 0x5851f42d4c957f2dULL) ^ edge_hash);

    // Out CSR: edges are sorted by (source, target).
    g.out_offsets_.assign(n + 1, 0);
    for (std::uint64_t code : edges) g.out_offsets_[edge_source(code) + 1]++;
    for (std::size_t v = 0; v < n; ++v) g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.out_targets_.resize(edges.size());
    {
        std::size_t i = 0;
        for (std::uint64_t code : edges) g.out_targets_[i++] = edge_target(code);
    }

    // In CSR: filling in sorted edge order keeps each source list ascending.
    g.in_offsets_.assign(n + 1, 0);
    for (std::uint64_t code : edges) g.in_offsets_[edge_target(code) + 1]++;
    for (std::size_t v = 0; v < n; ++v) g.in_offsets_[v + 1] += g.in_offsets_[v];
    g.in_targets_.resize(edges.size());
    {
        std::vector<std::uint64_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
        for (std::uint64_t code : edges) {
            g.in_targets_[cursor[edge_target(code)]++] = edge_source(code);
        }
    }
    edges.clear();
    edges.shrink_to_fit();

    // Undirected view: per-node sorted union of out- and in-neighbors.
    g.und_offsets_.assign(n + 1, 0);
    auto merged_size = [&](NodeId v) {
        auto a = g.out_neighbors(v);
        auto b = g.in_neighbors(v);
        std::size_t i = 0, j = 0, count = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) ++i;
            else if (b[j] < a[i]) ++j;
            else { ++i; ++j; }
            ++count;
        }
        return count + (a.size() - i) + (b.size() - j);
    };
    for (std::size_t v = 0; v < n; ++v) {
        g.und_offsets_[v + 1] = g.und_offsets_[v] + merged_size(static_cast<NodeId>(v));
    }
    g.und_targets_.resize(g.und_offsets_[n]);
    for (std::size_t v = 0; v < n; ++v) {
        auto a = g.out_neighbors(static_cast<NodeId>(v));
        auto b = g.in_neighbors(static_cast<NodeId>(v));
        std::size_t i = 0, j = 0;
        std::uint64_t w = g.und_offsets_[v];
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) g.und_targets_[w++] = a[i++];
            else if (b[j] < a[i]) g.und_targets_[w++] = b[j++];
            else { g.und_targets_[w++] = a[i++]; ++j; }
        }
        while (i < a.size()) g.und_targets_[w++] = a[i++];
        while (j < b.size()) g.und_targets_[w++] = b[j++];
    }
    g.m_undirected_ = g.und_offsets_[n] / 2;
    return g;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

CitationGraph load_edges(const std::string& path, const EdgeListOptions& options) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open edge list: " + path);

    GraphBuilder builder;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto fields = split(sv, options.delimiter);
        if (fields.size() != 2) {
            throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), lineno);
        }
        std::string_view citing = trim(fields[0]);
        std::string_view cited = trim(fields[1]);
        if (citing.empty() || cited.empty()) {
            throw ParseError("empty node key", lineno);
        }
        builder.add_edge_keys(citing, cited);
    }
    return std::move(builder).build();
}

NodeMetadata load_metadata(const std::string& path, const CitationGraph& graph) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open metadata file: " + path);

    NodeMetadata meta;
    meta.year.assign(graph.node_count(), NodeMetadata::kNoYear);
    meta.doi.assign(graph.node_count(), std::string{});

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto fields = split(sv, '\t');
        if (fields.size() < 2 || fields.size() > 3) {
            throw ParseError("expected `node_key<TAB>year[<TAB>doi]`", lineno);
        }
        std::string_view year_field = trim(fields[1]);
        std::int32_t year = 0;
        auto [ptr, ec] = std::from_chars(year_field.data(), year_field.data() + year_field.size(), year);
        if (ec != std::errc{} || ptr != year_field.data() + year_field.size()) {
            throw ParseError("year is not an integer: `" + std::string(year_field) + "`", lineno);
        }
        auto node = graph.find(trim(fields[0]));
        if (!node) {
            meta.unknown_key_warnings++;
            continue;
        }
        meta.year[*node] = year;
        if (fields.size() == 3) meta.doi[*node] = std::string(trim(fields[2]));
    }
    return meta;
}

CurationResult curate(const CitationGraph& graph, const NodeMetadata& metadata,
                      const std::unordered_set<std::string>& retracted_dois,
                      std::uint32_t max_references) {
    std::unordered_set<std::string> retracted_lower;
    retracted_lower.reserve(retracted_dois.size());
    for (const auto& doi : retracted_dois) retracted_lower.insert(to_lower(doi));

    const std::size_t n = graph.node_count();
    std::vector<char> removed(n, 0);
    CurationReport report;
    for (NodeId v = 0; v < n; ++v) {
        bool hit = false;
        if (!metadata.doi[v].empty() && retracted_lower.count(to_lower(metadata.doi[v]))) {
            report.retracted_matched++;
            hit = true;
        }
        // Filters test degrees of the original graph, not post-removal degrees.
        if (max_references != kNoReferenceLimit && graph.out_degree(v) >= max_references) {
            report.high_referencing_matched++;
            hit = true;
        }
        if (hit) removed[v] = 1;
    }

    GraphBuilder builder;
    std::vector<NodeId> remap(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (!removed[v]) {
            remap[v] = builder.intern(graph.key(v));
        } else {
            report.nodes_removed++;
        }
    }
    graph.for_each_edge([&](NodeId u, NodeId v) {
        if (!removed[u] && !removed[v]) builder.add_edge(remap[u], remap[v]);
    });
    CurationResult result{std::move(builder).build(), report};
    result.report.edges_removed = graph.edge_count() - result.graph.edge_count();
    return result;
}

int DegreeGroupReport::group_of(std::uint32_t total_degree) {
    if (total_degree < 100) return 0;
    if (total_degree < 1000) return 1;
    if (total_degree < 10000) return 2;
    if (total_degree < 100000) return 3;
    return 4;
}

DegreeGroupReport degree_groups(const CitationGraph& graph) {
    DegreeGroupReport report;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        report.counts[static_cast<std::size_t>(DegreeGroupReport::group_of(graph.total_degree(v)))]++;
    }
    return report;
}

std::vector<NodeId> largest_connected_component(const CitationGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<char> visited(n, 0);
    std::vector<NodeId> best, current, stack;
    for (NodeId seed = 0; seed < n; ++seed) {
        if (visited[seed]) continue;
        current.clear();
        stack.assign(1, seed);
        visited[seed] = 1;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            current.push_back(v);
            for (NodeId w : graph.neighbors(v)) {
                if (!visited[w]) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        // Seeds scan in ascending id order, so on equal sizes the earlier
        // component (smaller minimum id) is kept.
        if (current.size() > best.size()) best = current;
    }
    std::sort(best.begin(), best.end());
    return best;
}

}  // namespace corecrest
