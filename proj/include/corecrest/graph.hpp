// Immutable citation graph: directed CSR adjacency (out and in) plus an
// undirected view (distinct-neighbor union). Node ids are dense 0..n-1 and
// map bijectively to external string keys. After construction the graph is
// read-only and safe to share across threads.
#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corecrest/errors.hpp"

namespace corecrest {

using NodeId = std::uint32_t;

// Directed edge packed as (source << 32) | target; sorts by (source, target).
inline std::uint64_t pack_edge(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}
inline NodeId edge_source(std::uint64_t code) { return static_cast<NodeId>(code >> 32); }
inline NodeId edge_target(std::uint64_t code) { return static_cast<NodeId>(code & 0xffffffffULL); }

class GraphBuilder;

class CitationGraph {
public:
    CitationGraph() = default;

    std::size_t node_count() const { return n_; }
    // Distinct directed non-loop edges.
    std::uint64_t edge_count() const { return m_directed_; }
    // Unordered pairs: a reciprocal pair a->b, b->a counts once here.
    std::uint64_t undirected_edge_count() const { return m_undirected_; }

    std::uint32_t out_degree(NodeId v) const {
        return static_cast<std::uint32_t>(out_offsets_[v + 1] - out_offsets_[v]);
    }
    std::uint32_t in_degree(NodeId v) const {
        return static_cast<std::uint32_t>(in_offsets_[v + 1] - in_offsets_[v]);
    }
    // in_degree + out_degree; the degree used for candidate ordering and
    // degree groups.
    std::uint32_t total_degree(NodeId v) const { return in_degree(v) + out_degree(v); }
    // Number of distinct neighbors; the degree used by k-cores and modularity.
    std::uint32_t undirected_degree(NodeId v) const {
        return static_cast<std::uint32_t>(und_offsets_[v + 1] - und_offsets_[v]);
    }

    std::span<const NodeId> out_neighbors(NodeId v) const {
        return {out_targets_.data() + out_offsets_[v],
                out_targets_.data() + out_offsets_[v + 1]};
    }
    std::span<const NodeId> in_neighbors(NodeId v) const {
        return {in_targets_.data() + in_offsets_[v],
                in_targets_.data() + in_offsets_[v + 1]};
    }
    // Sorted union of out- and in-neighbors.
    std::span<const NodeId> neighbors(NodeId v) const {
        return {und_targets_.data() + und_offsets_[v],
                und_targets_.data() + und_offsets_[v + 1]};
    }

    std::string key(NodeId v) const {
        return implicit_keys_ ? std::to_string(v) : keys_[v];
    }
    std::optional<NodeId> find(std::string_view key) const;
    bool has_implicit_keys() const { return implicit_keys_; }

    // Order-independent hash of (n, edge set); identifies the source graph in
    // clusterings derived from it.
    std::uint64_t fingerprint() const { return fingerprint_; }

    // Directed edges in (source asc, target asc) order.
    template <typename F>
    void for_each_edge(F&& f) const {
        for (NodeId u = 0; u < n_; ++u) {
            for (NodeId v : out_neighbors(u)) f(u, v);
        }
    }

    // Bytes held by adjacency arrays; used by the performance contract checks.
    std::uint64_t memory_footprint() const;

private:
    friend class GraphBuilder;

    std::size_t n_ = 0;
    std::uint64_t m_directed_ = 0;
    std::uint64_t m_undirected_ = 0;
    std::vector<std::uint64_t> out_offsets_{0};
    std::vector<std::uint64_t> in_offsets_{0};
    std::vector<std::uint64_t> und_offsets_{0};
    std::vector<NodeId> out_targets_;
    std::vector<NodeId> in_targets_;
    std::vector<NodeId> und_targets_;
    bool implicit_keys_ = false;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, NodeId> key_index_;
    std::uint64_t fingerprint_ = 0;
};

// Accumulates edges, then builds the immutable graph: duplicate directed
// edges collapse, self-loops drop, internal ids follow first-seen key order.
class GraphBuilder {
public:
    GraphBuilder() = default;

    // Nodes 0..n-1 exist up front and are named by their decimal id. Avoids
    // storing per-node strings for generated graphs.
    static GraphBuilder with_implicit_keys(std::size_t n);

    NodeId intern(std::string_view key);
    void add_edge(NodeId citing, NodeId cited);
    void add_edge_keys(std::string_view citing, std::string_view cited) {
        // Two statements: argument evaluation order must not decide ids.
        NodeId u = intern(citing);
        NodeId v = intern(cited);
        add_edge(u, v);
    }
    void reserve_edges(std::size_t m) { edges_.reserve(m); }
    // Takes a whole pack_edge-encoded vector, reusing its storage when the
    // builder holds no edges yet. Loops must already be absent.
    void adopt_edges(std::vector<std::uint64_t>&& packed) {
        if (edges_.empty()) {
            edges_ = std::move(packed);
        } else {
            edges_.insert(edges_.end(), packed.begin(), packed.end());
        }
    }

    CitationGraph build() &&;

private:
    bool implicit_ = false;
    std::size_t implicit_n_ = 0;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, NodeId> key_index_;
    std::vector<std::uint64_t> edges_;
};

// Per-node publication year and DOI, covering a subset of nodes.
struct NodeMetadata {
    static constexpr std::int32_t kNoYear = std::numeric_limits<std::int32_t>::min();

    std::vector<std::int32_t> year;  // kNoYear when absent
    std::vector<std::string> doi;    // empty when absent
    std::size_t unknown_key_warnings = 0;

    bool has_year(NodeId v) const { return year[v] != kNoYear; }
};

struct CurationReport {
    std::uint64_t nodes_removed = 0;
    std::uint64_t edges_removed = 0;  // directed edges
    std::uint64_t retracted_matched = 0;
    std::uint64_t high_referencing_matched = 0;
};

struct CurationResult {
    CitationGraph graph;
    CurationReport report;
};

// Five total-degree groups: [0,100) [100,1e3) [1e3,1e4) [1e4,1e5) [1e5,inf).
struct DegreeGroupReport {
    std::array<std::uint64_t, 5> counts{};

    static int group_of(std::uint32_t total_degree);
};

struct EdgeListOptions {
    char delimiter = '\t';
};

// Sentinel for "no reference-count filter".
inline constexpr std::uint32_t kNoReferenceLimit = std::numeric_limits<std::uint32_t>::max();

// One edge per line `citing<delim>cited`; `#` comments and blank lines skip.
CitationGraph load_edges(const std::string& path, const EdgeListOptions& options = {});

// Rows `node_key<TAB>year[<TAB>doi]`. Keys absent from the graph are counted
// as warnings and skipped. Ids in the returned table are the graph's ids; a
// curated graph renumbers nodes, so reload metadata against it.
NodeMetadata load_metadata(const std::string& path, const CitationGraph& graph);

// Removes nodes whose DOI is in retracted_dois (case-insensitive exact match)
// or whose out-degree >= max_references, plus all incident edges. Both
// filters test the original graph's degrees in a single pass.
CurationResult curate(const CitationGraph& graph, const NodeMetadata& metadata,
                      const std::unordered_set<std::string>& retracted_dois,
                      std::uint32_t max_references = kNoReferenceLimit);

DegreeGroupReport degree_groups(const CitationGraph& graph);

// Largest weakly connected component; ties break toward the component with
// the smallest minimum internal id. Sorted ascending.
std::vector<NodeId> largest_connected_component(const CitationGraph& graph);

}  // namespace corecrest
