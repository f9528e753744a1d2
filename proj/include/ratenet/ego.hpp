#pragma once

#include "ratenet/graph.hpp"

namespace ratenet {

// The first rater's depth-3 ego network, windowed to [t0-L, t0) with the
// target item removed. node_map translates ego-local indexes back to the
// originals.
struct EgoNetwork {
    TemporalBipartiteGraph graph;
    std::uint32_t ego = 0;  // ego-local primary index (always 0)
    std::uint32_t original_ego = 0;
    std::vector<std::uint32_t> primary_map;    // local -> original user index
    std::vector<std::uint32_t> secondary_map;  // local -> original item index
    std::int64_t anchor_time = 0;              // t0
    double first_rating = 0.0;                 // r
};

EgoNetwork extract_ego_network(const TemporalBipartiteGraph& graph, std::uint32_t item,
                               const DatasetProfile& profile);

struct EgoStats {
    std::uint64_t size = 0;
    double mean_degree = 0.0;
    double density = 0.0;
};

// size = nodes; mean_degree = 2E/N; density = E/(p*s) with the bipartite
// maximum as denominator, 0 when either partition is empty.
EgoStats ego_stats(const EgoNetwork& net);

}  // namespace ratenet
