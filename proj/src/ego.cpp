#include "ratenet/ego.hpp"

#include <algorithm>
#include <deque>

namespace ratenet {

EgoNetwork extract_ego_network(const TemporalBipartiteGraph& graph, std::uint32_t item,
                               const DatasetProfile& profile) {
    const FirstRating first = graph.first_rating(item);
    const TimeWindow window{first.timestamp - profile.lookback_window, first.timestamp};

    // Depth-3 BFS from the ego, traversing only in-window edges and never
    // touching the target item.
    const std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> primary_local(graph.primary_count(), kUnset);
    std::vector<std::uint32_t> secondary_local(graph.secondary_count(), kUnset);
    std::vector<std::uint32_t> primary_map;
    std::vector<std::uint32_t> secondary_map;
    primary_local[first.user] = 0;
    primary_map.push_back(first.user);

    std::deque<std::pair<NodeRef, std::uint32_t>> queue{{NodeRef::user(first.user), 0}};
    while (!queue.empty()) {
        auto [node, dist] = queue.front();
        queue.pop_front();
        if (dist == 3) continue;
        const Side other_side = node.side == Side::primary ? Side::secondary : Side::primary;
        auto edge_indexes = graph.incident_edges(node);
        auto nbs = graph.neighbors(node);
        for (std::size_t k = 0; k < nbs.size(); ++k) {
            const Edge& e = graph.edges()[edge_indexes[k]];
            if (!window.contains(e.timestamp)) continue;
            const std::uint32_t nb = nbs[k];
            if (other_side == Side::secondary && nb == item) continue;
            auto& local = other_side == Side::primary ? primary_local : secondary_local;
            auto& map = other_side == Side::primary ? primary_map : secondary_map;
            if (local[nb] != kUnset) continue;
            local[nb] = static_cast<std::uint32_t>(map.size());
            map.push_back(nb);
            queue.emplace_back(NodeRef{other_side, nb}, dist + 1);
        }
    }

    // Induced edges among reached nodes, inside the window.
    std::vector<Edge> edges;
    for (std::uint32_t local_u = 0; local_u < primary_map.size(); ++local_u) {
        const std::uint32_t u = primary_map[local_u];
        auto edge_indexes = graph.incident_edges(NodeRef::user(u));
        for (std::uint32_t eidx : edge_indexes) {
            const Edge& e = graph.edges()[eidx];
            if (!window.contains(e.timestamp)) continue;
            if (e.secondary == item || secondary_local[e.secondary] == kUnset) continue;
            edges.push_back({local_u, secondary_local[e.secondary], e.rating, e.timestamp});
        }
    }

    std::vector<std::string> primary_ids;
    primary_ids.reserve(primary_map.size());
    for (std::uint32_t u : primary_map) primary_ids.push_back(graph.primary_ids()[u]);
    std::vector<std::string> secondary_ids;
    secondary_ids.reserve(secondary_map.size());
    for (std::uint32_t i : secondary_map) secondary_ids.push_back(graph.secondary_ids()[i]);

    EgoNetwork net;
    net.graph = TemporalBipartiteGraph(std::move(primary_ids), std::move(secondary_ids),
                                       std::move(edges));
    net.ego = 0;
    net.original_ego = first.user;
    net.primary_map = std::move(primary_map);
    net.secondary_map = std::move(secondary_map);
    net.anchor_time = first.timestamp;
    net.first_rating = first.rating;
    return net;
}

EgoStats ego_stats(const EgoNetwork& net) {
    EgoStats stats;
    const double p = net.graph.primary_count();
    const double s = net.graph.secondary_count();
    const double e = static_cast<double>(net.graph.edge_count());
    stats.size = net.graph.primary_count() + net.graph.secondary_count();
    stats.mean_degree = stats.size == 0 ? 0.0 : 2.0 * e / static_cast<double>(stats.size);
    stats.density = (p * s) == 0.0 ? 0.0 : e / (p * s);
    return stats;
}

}  // namespace ratenet
