#include "corecrest/kcore.hpp"

#include <algorithm>
#include <numeric>

namespace corecrest {

namespace {

// Batagelj-Zaversnik bin peeling restricted to the nodes flagged in
// in_subset. subset lists the same nodes; both are passed to avoid a rescan.
CoreDecomposition peel(const CitationGraph& graph, std::span<const NodeId> subset,
                       const std::vector<char>& in_subset) {
    CoreDecomposition result;
    result.core_number.assign(graph.node_count(), 0);
    if (subset.empty()) return result;

    std::vector<std::uint32_t> deg(graph.node_count(), 0);
    std::uint32_t max_deg = 0;
    for (NodeId v : subset) {
        std::uint32_t d = 0;
        for (NodeId w : graph.neighbors(v)) d += in_subset[w];
        deg[v] = d;
        max_deg = std::max(max_deg, d);
    }

    // Counting sort by degree; ties start in ascending id order because
    // subset is scanned in ascending order below.
    std::vector<std::uint64_t> bin(max_deg + 2, 0);
    for (NodeId v : subset) bin[deg[v] + 1]++;
    for (std::size_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];
    std::vector<NodeId> vert(subset.size());
    std::vector<std::uint64_t> pos(graph.node_count(), 0);
    {
        std::vector<std::uint64_t> cursor(bin.begin(), bin.end() - 1);
        std::vector<NodeId> sorted(subset.begin(), subset.end());
        std::sort(sorted.begin(), sorted.end());
        for (NodeId v : sorted) {
            pos[v] = cursor[deg[v]]++;
            vert[pos[v]] = v;
        }
    }

    for (std::size_t i = 0; i < vert.size(); ++i) {
        NodeId v = vert[i];
        result.core_number[v] = deg[v];
        result.degeneracy = std::max(result.degeneracy, deg[v]);
        for (NodeId u : graph.neighbors(v)) {
            if (!in_subset[u] || deg[u] <= deg[v]) continue;
            // Swap u with the first node of its bin, then shrink the bin.
            std::uint64_t pu = pos[u];
            std::uint64_t pw = bin[deg[u]];
            NodeId w = vert[pw];
            if (u != w) {
                vert[pu] = w;
                vert[pw] = u;
                pos[u] = pw;
                pos[w] = pu;
            }
            bin[deg[u]]++;
            deg[u]--;
        }
    }
    return result;
}

std::vector<std::vector<NodeId>> components_of(const CitationGraph& graph,
                                               const std::vector<NodeId>& nodes,
                                               const std::vector<char>& mark) {
    std::vector<std::vector<NodeId>> components;
    std::vector<char> visited(graph.node_count(), 0);
    std::vector<NodeId> stack;
    for (NodeId seed : nodes) {
        if (visited[seed]) continue;
        std::vector<NodeId> comp;
        stack.assign(1, seed);
        visited[seed] = 1;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (NodeId w : graph.neighbors(v)) {
                if (mark[w] && !visited[w]) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    // Seeds ran in ascending id order, so equal sizes keep min-id order.
    std::stable_sort(components.begin(), components.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return components;
}

}  // namespace

CoreDecomposition core_numbers(const CitationGraph& graph) {
    std::vector<NodeId> all(graph.node_count());
    std::iota(all.begin(), all.end(), NodeId{0});
    std::vector<char> in_subset(graph.node_count(), 1);
    return peel(graph, all, in_subset);
}

CoreDecomposition core_numbers(const CitationGraph& graph, std::span<const NodeId> subset) {
    std::vector<char> in_subset(graph.node_count(), 0);
    for (NodeId v : subset) in_subset[v] = 1;
    return peel(graph, subset, in_subset);
}

std::vector<std::vector<NodeId>> k_core_components(const CitationGraph& graph,
                                                   std::span<const NodeId> subset,
                                                   std::uint32_t k) {
    if (k == 0) return {};
    auto decomposition = core_numbers(graph, subset);
    std::vector<char> in_core(graph.node_count(), 0);
    std::vector<NodeId> core_nodes;
    for (NodeId v : subset) {
        if (decomposition.core_number[v] >= k) {
            in_core[v] = 1;
            core_nodes.push_back(v);
        }
    }
    std::sort(core_nodes.begin(), core_nodes.end());
    return components_of(graph, core_nodes, in_core);
}

std::vector<std::vector<NodeId>> connected_components(const CitationGraph& graph,
                                                      std::span<const NodeId> subset) {
    std::vector<char> mark(graph.node_count(), 0);
    for (NodeId v : subset) mark[v] = 1;
    std::vector<NodeId> nodes(subset.begin(), subset.end());
    std::sort(nodes.begin(), nodes.end());
    return components_of(graph, nodes, mark);
}

}  // namespace corecrest
