#include "corecrest/null_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "corecrest/rng.hpp"

namespace corecrest {

namespace {

// Cell indices for possible edges. Directed: cell = u*(n-1) + r with the
// self-loop column skipped (v = r, bumped past u). Undirected: cells are
// drawn as random ordered pairs and normalized, which is uniform over
// unordered pairs; the cell code is min*n + max so duplicates collapse.
std::uint64_t draw_directed_cell(Rng& rng, std::uint64_t n) {
    std::uint64_t u = rng.below(n);
    std::uint64_t r = rng.below(n - 1);
    return u * (n - 1) + r;
}

std::pair<NodeId, NodeId> decode_directed_cell(std::uint64_t cell, std::uint64_t n) {
    std::uint64_t u = cell / (n - 1);
    std::uint64_t r = cell % (n - 1);
    std::uint64_t v = r + (r >= u);
    return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
}

std::uint64_t draw_undirected_cell(Rng& rng, std::uint64_t n) {
    std::uint64_t a = rng.below(n);
    std::uint64_t b = rng.below(n - 1);
    b += (b >= a);
    return std::min(a, b) * n + std::max(a, b);
}

std::pair<NodeId, NodeId> decode_undirected_cell(std::uint64_t cell, std::uint64_t n) {
    return {static_cast<NodeId>(cell / n), static_cast<NodeId>(cell % n)};
}

// First m distinct values of an iid uniform stream form a uniform m-subset.
// Phase 1 materializes the first m draws at once; the top-up continues the
// same stream, rejecting values already collected.
std::vector<std::uint64_t> sample_cells_sparse(Rng& rng, std::uint64_t n, std::uint64_t m,
                                               bool directed) {
    std::vector<std::uint64_t> cells;
    cells.reserve(m + m / 64 + 16);
    for (std::uint64_t i = 0; i < m; ++i) {
        cells.push_back(directed ? draw_directed_cell(rng, n) : draw_undirected_cell(rng, n));
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    std::vector<std::uint64_t> extra;
    while (cells.size() + extra.size() < m) {
        std::uint64_t cell =
            directed ? draw_directed_cell(rng, n) : draw_undirected_cell(rng, n);
        if (std::binary_search(cells.begin(), cells.end(), cell)) continue;
        if (std::find(extra.begin(), extra.end(), cell) != extra.end()) continue;
        extra.push_back(cell);
    }
    cells.insert(cells.end(), extra.begin(), extra.end());
    std::sort(cells.begin(), cells.end());
    return cells;
}

// Enumerate every cell and keep a random m-subset via partial Fisher-Yates.
std::vector<std::uint64_t> sample_cells_dense(Rng& rng, std::uint64_t n, std::uint64_t m,
                                              std::uint64_t cell_count, bool directed) {
    std::vector<std::uint64_t> cells;
    cells.reserve(cell_count);
    if (directed) {
        for (std::uint64_t c = 0; c < cell_count; ++c) cells.push_back(c);
    } else {
        for (std::uint64_t i = 0; i < n; ++i) {
            for (std::uint64_t j = i + 1; j < n; ++j) cells.push_back(i * n + j);
        }
    }
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t j = i + rng.below(cell_count - i);
        std::swap(cells[i], cells[j]);
    }
    cells.resize(m);
    cells.shrink_to_fit();
    std::sort(cells.begin(), cells.end());
    return cells;
}

}  // namespace

CitationGraph er_generate(std::uint64_t n, std::uint64_t m, std::uint64_t seed, bool directed) {
    const std::uint64_t cell_count = directed ? n * (n - 1) : n * (n - 1) / 2;
    if (n == 0 || m == 0) {
        auto b = GraphBuilder::with_implicit_keys(n);
        return std::move(b).build();
    }
    if (m > cell_count) {
        throw ConfigError("cannot place " + std::to_string(m) + " edges on " +
                          std::to_string(n) + " nodes");
    }

    Rng rng = Rng::derive(seed, directed ? 0x4449u : 0x554eu);
    std::vector<std::uint64_t> cells =
        cell_count <= (1ull << 24) ? sample_cells_dense(rng, n, m, cell_count, directed)
                                   : sample_cells_sparse(rng, n, m, directed);

    // Reuse the cell storage for the packed edges. Directed cells sort the
    // same way as (source, target) pairs, so the vector stays sorted.
    for (auto& cell : cells) {
        auto [u, v] = directed ? decode_directed_cell(cell, n) : decode_undirected_cell(cell, n);
        cell = pack_edge(u, v);
    }
    auto b = GraphBuilder::with_implicit_keys(n);
    b.adopt_edges(std::move(cells));
    return std::move(b).build();
}

ShuffleResult shuffle_configuration(const CitationGraph& graph, const NodeMetadata& metadata,
                                    const ShuffleConfig& config) {
    if (config.swap_multiplier < 0.0) {
        throw ConfigError("swap multiplier must be non-negative");
    }

    // Every cited endpoint needs a year before any work starts.
    std::vector<NodeId> missing;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        if (graph.in_degree(v) > 0 && !metadata.has_year(v)) missing.push_back(v);
    }
    if (!missing.empty()) {
        std::string msg = "cited nodes lack a publication year:";
        for (std::size_t i = 0; i < missing.size() && i < 10; ++i) {
            msg += " " + graph.key(missing[i]);
        }
        if (missing.size() > 10) {
            msg += " (+" + std::to_string(missing.size() - 10) + " more)";
        }
        throw InputError(msg);
    }

    std::map<std::int32_t, std::vector<std::uint64_t>> strata;
    graph.for_each_edge([&](NodeId u, NodeId v) {
        strata[metadata.year[v]].push_back(pack_edge(u, v));
    });

    ShuffleResult result;
    result.report.strata = strata.size();
    GraphBuilder builder;
    if (graph.has_implicit_keys()) {
        builder = GraphBuilder::with_implicit_keys(graph.node_count());
    } else {
        for (NodeId v = 0; v < graph.node_count(); ++v) builder.intern(graph.key(v));
    }
    builder.reserve_edges(graph.edge_count());

    for (auto& [year, edges] : strata) {
        const std::size_t count = edges.size();
        if (count >= 2 && config.swap_multiplier > 0.0) {
            Rng rng = Rng::derive(config.seed,
                                  static_cast<std::uint64_t>(static_cast<std::uint32_t>(year)));
            std::unordered_set<std::uint64_t> present(edges.begin(), edges.end());
            const auto attempts = static_cast<std::uint64_t>(
                std::ceil(config.swap_multiplier * static_cast<double>(count)));
            for (std::uint64_t a = 0; a < attempts; ++a) {
                result.report.attempts++;
                std::uint64_t i = rng.below(count);
                std::uint64_t j = rng.below(count);
                if (i == j) {
                    result.report.rejected_same_index++;
                    continue;
                }
                const NodeId u1 = edge_source(edges[i]), v1 = edge_target(edges[i]);
                const NodeId u2 = edge_source(edges[j]), v2 = edge_target(edges[j]);
                if (u1 == v2 || u2 == v1) {
                    result.report.rejected_loop++;
                    continue;
                }
                const std::uint64_t new1 = pack_edge(u1, v2);
                const std::uint64_t new2 = pack_edge(u2, v1);
                // A hit on one of the two edges being rewritten is not a
                // duplicate; both targets came from this stratum, so any
                // colliding edge lives in this set.
                const bool dup1 = present.count(new1) && new1 != edges[i] && new1 != edges[j];
                const bool dup2 = present.count(new2) && new2 != edges[i] && new2 != edges[j];
                if (dup1 || dup2) {
                    result.report.rejected_duplicate++;
                    continue;
                }
                present.erase(edges[i]);
                present.erase(edges[j]);
                present.insert(new1);
                present.insert(new2);
                edges[i] = new1;
                edges[j] = new2;
                result.report.accepted++;
            }
        }
        builder.adopt_edges(std::move(edges));
    }
    result.graph = std::move(builder).build();
    return result;
}

}  // namespace corecrest
