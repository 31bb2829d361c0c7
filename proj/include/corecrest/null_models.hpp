// Random baselines: seeded G(n,m) digraph generation and a degree- and
// cited-year-preserving edge shuffle.
#pragma once

#include <cstdint>

#include "corecrest/graph.hpp"

namespace corecrest {

// Samples exactly m distinct non-loop edges uniformly among all possible
// ones (directed: ordered pairs; undirected: unordered pairs, emitted as
// min->max). Same seed, same graph. Throws ConfigError when m exceeds the
// number of possible edges.
CitationGraph er_generate(std::uint64_t n, std::uint64_t m, std::uint64_t seed, bool directed);

struct ShuffleConfig {
    std::uint64_t seed = 0;
    // Attempted swaps per stratum = ceil(multiplier * stratum size).
    double swap_multiplier = 10.0;
};

struct ShuffleReport {
    std::uint64_t strata = 0;
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected_loop = 0;
    std::uint64_t rejected_duplicate = 0;
    std::uint64_t rejected_same_index = 0;
};

struct ShuffleResult {
    CitationGraph graph;
    ShuffleReport report;
};

// Partitions edges by cited-node year, then runs double-edge swaps of cited
// endpoints within each stratum: (u1->v1, u2->v2) => (u1->v2, u2->v1),
// rejecting swaps that would create a loop or duplicate. Preserves n, m,
// every in/out-degree, simplicity, and each edge's cited-node year. Each
// stratum draws from a generator derived from (seed, year), so results do
// not depend on processing order. Throws InputError when a cited node has
// no year, listing the offenders.
ShuffleResult shuffle_configuration(const CitationGraph& graph, const NodeMetadata& metadata,
                                    const ShuffleConfig& config);

}  // namespace corecrest
