#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ratenet/types.hpp"

namespace ratenet {

enum class Side : std::uint8_t { primary, secondary };

struct NodeRef {
    Side side = Side::primary;
    std::uint32_t index = 0;

    friend bool operator==(const NodeRef&, const NodeRef&) = default;

    static NodeRef user(std::uint32_t i) { return {Side::primary, i}; }
    static NodeRef item(std::uint32_t i) { return {Side::secondary, i}; }
};

struct Edge {
    std::uint32_t primary = 0;
    std::uint32_t secondary = 0;
    double rating = 0.0;
    std::int64_t timestamp = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct FirstRating {
    std::uint32_t user = 0;
    double rating = 0.0;
    std::int64_t timestamp = 0;
};

struct BuildStats {
    std::uint64_t events = 0;
    std::uint64_t duplicates = 0;
};

// Immutable temporal bipartite graph. Users are the primary partition, items
// the secondary. Adjacency is CSR per partition, sorted by neighbor index;
// each item additionally carries its edges in timestamp order.
class TemporalBipartiteGraph {
  public:
    TemporalBipartiteGraph() = default;
    TemporalBipartiteGraph(std::vector<std::string> primary_ids,
                           std::vector<std::string> secondary_ids,
                           std::vector<Edge> edges);

    std::uint32_t primary_count() const { return static_cast<std::uint32_t>(primary_ids_.size()); }
    std::uint32_t secondary_count() const { return static_cast<std::uint32_t>(secondary_ids_.size()); }
    std::uint64_t edge_count() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& primary_ids() const { return primary_ids_; }
    const std::vector<std::string>& secondary_ids() const { return secondary_ids_; }

    std::optional<std::uint32_t> find_primary(const std::string& id) const;
    std::optional<std::uint32_t> find_secondary(const std::string& id) const;

    std::uint32_t degree(NodeRef node) const;
    // Opposite-partition neighbor indexes, ascending, no duplicates.
    std::span<const std::uint32_t> neighbors(NodeRef node) const;
    // Edge indexes incident to the node, in the same order as neighbors().
    std::span<const std::uint32_t> incident_edges(NodeRef node) const;
    // Edge indexes of an item sorted by (timestamp, user index).
    std::span<const std::uint32_t> item_edges_by_time(std::uint32_t item) const;

    bool has_edge(std::uint32_t user, std::uint32_t item) const;

    TemporalBipartiteGraph windowed_view(TimeWindow window) const;

    FirstRating first_rating(std::uint32_t item) const;

    // Nodes within max_depth hops of root, as (node, distance) in BFS order;
    // ties at equal depth are visited in ascending neighbor order.
    std::vector<std::pair<NodeRef, std::uint32_t>> bounded_bfs(NodeRef root,
                                                               std::uint32_t max_depth) const;

    // (rating count, mean rating) of an item inside the window; mean is 0 when empty.
    std::pair<std::uint32_t, double> item_window_stats(std::uint32_t item, TimeWindow window) const;

    bool structurally_equal(const TemporalBipartiteGraph& other) const;

  private:
    void build_indexes();
    void check_node(NodeRef node) const;

    std::vector<std::string> primary_ids_;
    std::vector<std::string> secondary_ids_;
    std::vector<Edge> edges_;

    std::unordered_map<std::string, std::uint32_t> primary_lookup_;
    std::unordered_map<std::string, std::uint32_t> secondary_lookup_;

    // CSR adjacency, sorted by neighbor index within each node's range.
    std::vector<std::uint64_t> primary_offsets_;
    std::vector<std::uint32_t> primary_adj_edges_;
    std::vector<std::uint32_t> primary_adj_;
    std::vector<std::uint64_t> secondary_offsets_;
    std::vector<std::uint32_t> secondary_adj_edges_;
    std::vector<std::uint32_t> secondary_adj_;
    // Per item, edge indexes sorted by (timestamp, user).
    std::vector<std::uint32_t> secondary_time_edges_;
};

// Deduplicates (user,item) pairs keeping the earliest-timestamped event and
// assigns dense node indexes in order of first appearance.
TemporalBipartiteGraph build_graph(std::span<const RatingEvent> events, BuildStats* stats = nullptr);

}  // namespace ratenet
