#include "corecrest/ikc.hpp"

#include <numeric>

#include "corecrest/kcore.hpp"

namespace corecrest {

IkcResult ikc(const CitationGraph& graph, std::uint32_t k) {
    if (k == 0) throw ConfigError("ikc requires k >= 1");

    IkcResult result;
    result.clustering.graph_fingerprint = graph.fingerprint();
    result.clustering.graph_nodes = graph.node_count();
    result.clustering.ikc_k = k;

    std::vector<NodeId> working(graph.node_count());
    std::iota(working.begin(), working.end(), NodeId{0});

    std::uint32_t next_id = 0;
    while (!working.empty()) {
        auto decomposition = core_numbers(graph, working);
        const std::uint32_t d = decomposition.degeneracy;
        if (d < k) break;

        // The d-core of the working set, component by component. Modularity
        // is judged against the full input graph, and every d-core node
        // leaves the working set whether its component was kept or not.
        auto components = k_core_components(graph, working, d);
        std::vector<char> extracted(graph.node_count(), 0);
        for (const auto& component : components) {
            for (NodeId v : component) extracted[v] = 1;
            double q = cluster_modularity(graph, component);
            if (q > 0.0) {
                Cluster cluster;
                cluster.id = next_id++;
                cluster.members = component;
                cluster.meta.extraction_k = d;
                cluster.meta.mcd = mcd_of(graph, component);
                cluster.meta.modularity = q;
                cluster.meta.provenance = Provenance::ikc;
                result.clustering.clusters.push_back(std::move(cluster));
            } else {
                result.rejected.push_back({component, d, q});
            }
        }
        std::vector<NodeId> remaining;
        remaining.reserve(working.size());
        for (NodeId v : working) {
            if (!extracted[v]) remaining.push_back(v);
        }
        working = std::move(remaining);
    }
    return result;
}

}  // namespace corecrest
