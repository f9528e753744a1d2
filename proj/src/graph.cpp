#include "ratenet/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace ratenet {

TemporalBipartiteGraph::TemporalBipartiteGraph(std::vector<std::string> primary_ids,
                                               std::vector<std::string> secondary_ids,
                                               std::vector<Edge> edges)
    : primary_ids_(std::move(primary_ids)),
      secondary_ids_(std::move(secondary_ids)),
      edges_(std::move(edges)) {
    for (const Edge& e : edges_) {
        if (e.primary >= primary_ids_.size() || e.secondary >= secondary_ids_.size())
            throw DataError("edge endpoint out of range");
    }
    build_indexes();
}

void TemporalBipartiteGraph::build_indexes() {
    primary_lookup_.reserve(primary_ids_.size());
    for (std::uint32_t i = 0; i < primary_ids_.size(); ++i) primary_lookup_[primary_ids_[i]] = i;
    secondary_lookup_.reserve(secondary_ids_.size());
    for (std::uint32_t i = 0; i < secondary_ids_.size(); ++i) secondary_lookup_[secondary_ids_[i]] = i;

    const std::size_t p = primary_ids_.size();
    const std::size_t s = secondary_ids_.size();
    primary_offsets_.assign(p + 1, 0);
    secondary_offsets_.assign(s + 1, 0);
    for (const Edge& e : edges_) {
        ++primary_offsets_[e.primary + 1];
        ++secondary_offsets_[e.secondary + 1];
    }
    std::partial_sum(primary_offsets_.begin(), primary_offsets_.end(), primary_offsets_.begin());
    std::partial_sum(secondary_offsets_.begin(), secondary_offsets_.end(), secondary_offsets_.begin());

    primary_adj_edges_.resize(edges_.size());
    secondary_adj_edges_.resize(edges_.size());
    {
        std::vector<std::uint64_t> pcur(primary_offsets_.begin(), primary_offsets_.end() - 1);
        std::vector<std::uint64_t> scur(secondary_offsets_.begin(), secondary_offsets_.end() - 1);
        for (std::uint32_t idx = 0; idx < edges_.size(); ++idx) {
            primary_adj_edges_[pcur[edges_[idx].primary]++] = idx;
            secondary_adj_edges_[scur[edges_[idx].secondary]++] = idx;
        }
    }
    for (std::size_t u = 0; u < p; ++u) {
        auto begin = primary_adj_edges_.begin() + static_cast<std::ptrdiff_t>(primary_offsets_[u]);
        auto end = primary_adj_edges_.begin() + static_cast<std::ptrdiff_t>(primary_offsets_[u + 1]);
        std::sort(begin, end, [&](std::uint32_t a, std::uint32_t b) {
            return edges_[a].secondary < edges_[b].secondary;
        });
        for (auto it = begin; it + 1 < end; ++it)
            if (edges_[*it].secondary == edges_[*(it + 1)].secondary)
                throw DataError("parallel edge detected");
    }
    secondary_time_edges_ = secondary_adj_edges_;
    for (std::size_t i = 0; i < s; ++i) {
        auto begin = secondary_adj_edges_.begin() + static_cast<std::ptrdiff_t>(secondary_offsets_[i]);
        auto end = secondary_adj_edges_.begin() + static_cast<std::ptrdiff_t>(secondary_offsets_[i + 1]);
        std::sort(begin, end, [&](std::uint32_t a, std::uint32_t b) {
            return edges_[a].primary < edges_[b].primary;
        });
        auto tbegin = secondary_time_edges_.begin() + static_cast<std::ptrdiff_t>(secondary_offsets_[i]);
        auto tend = secondary_time_edges_.begin() + static_cast<std::ptrdiff_t>(secondary_offsets_[i + 1]);
        std::sort(tbegin, tend, [&](std::uint32_t a, std::uint32_t b) {
            if (edges_[a].timestamp != edges_[b].timestamp)
                return edges_[a].timestamp < edges_[b].timestamp;
            return edges_[a].primary < edges_[b].primary;
        });
    }

    primary_adj_.resize(edges_.size());
    for (std::size_t k = 0; k < primary_adj_edges_.size(); ++k)
        primary_adj_[k] = edges_[primary_adj_edges_[k]].secondary;
    secondary_adj_.resize(edges_.size());
    for (std::size_t k = 0; k < secondary_adj_edges_.size(); ++k)
        secondary_adj_[k] = edges_[secondary_adj_edges_[k]].primary;
}

std::optional<std::uint32_t> TemporalBipartiteGraph::find_primary(const std::string& id) const {
    auto it = primary_lookup_.find(id);
    if (it == primary_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> TemporalBipartiteGraph::find_secondary(const std::string& id) const {
    auto it = secondary_lookup_.find(id);
    if (it == secondary_lookup_.end()) return std::nullopt;
    return it->second;
}

void TemporalBipartiteGraph::check_node(NodeRef node) const {
    const std::size_t limit =
        node.side == Side::primary ? primary_ids_.size() : secondary_ids_.size();
    if (node.index >= limit) throw DataError("unknown node index " + std::to_string(node.index));
}

std::uint32_t TemporalBipartiteGraph::degree(NodeRef node) const {
    check_node(node);
    if (node.side == Side::primary)
        return static_cast<std::uint32_t>(primary_offsets_[node.index + 1] -
                                          primary_offsets_[node.index]);
    return static_cast<std::uint32_t>(secondary_offsets_[node.index + 1] -
                                      secondary_offsets_[node.index]);
}

std::span<const std::uint32_t> TemporalBipartiteGraph::neighbors(NodeRef node) const {
    check_node(node);
    if (node.side == Side::primary)
        return {primary_adj_.data() + primary_offsets_[node.index],
                primary_adj_.data() + primary_offsets_[node.index + 1]};
    return {secondary_adj_.data() + secondary_offsets_[node.index],
            secondary_adj_.data() + secondary_offsets_[node.index + 1]};
}

std::span<const std::uint32_t> TemporalBipartiteGraph::incident_edges(NodeRef node) const {
    check_node(node);
    if (node.side == Side::primary)
        return {primary_adj_edges_.data() + primary_offsets_[node.index],
                primary_adj_edges_.data() + primary_offsets_[node.index + 1]};
    return {secondary_adj_edges_.data() + secondary_offsets_[node.index],
            secondary_adj_edges_.data() + secondary_offsets_[node.index + 1]};
}

std::span<const std::uint32_t> TemporalBipartiteGraph::item_edges_by_time(std::uint32_t item) const {
    check_node(NodeRef::item(item));
    return {secondary_time_edges_.data() + secondary_offsets_[item],
            secondary_time_edges_.data() + secondary_offsets_[item + 1]};
}

bool TemporalBipartiteGraph::has_edge(std::uint32_t user, std::uint32_t item) const {
    auto nb = neighbors(NodeRef::user(user));
    return std::binary_search(nb.begin(), nb.end(), item);
}

TemporalBipartiteGraph TemporalBipartiteGraph::windowed_view(TimeWindow window) const {
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    for (const Edge& e : edges_)
        if (window.contains(e.timestamp)) kept.push_back(e);
    return {primary_ids_, secondary_ids_, std::move(kept)};
}

FirstRating TemporalBipartiteGraph::first_rating(std::uint32_t item) const {
    auto by_time = item_edges_by_time(item);
    if (by_time.empty()) throw DataError("item has no ratings: " + secondary_ids_[item]);
    const Edge& e = edges_[by_time.front()];
    return {e.primary, e.rating, e.timestamp};
}

std::vector<std::pair<NodeRef, std::uint32_t>> TemporalBipartiteGraph::bounded_bfs(
    NodeRef root, std::uint32_t max_depth) const {
    check_node(root);
    std::vector<std::pair<NodeRef, std::uint32_t>> out;
    std::vector<bool> seen_primary(primary_ids_.size(), false);
    std::vector<bool> seen_secondary(secondary_ids_.size(), false);
    auto& seen_root = root.side == Side::primary ? seen_primary : seen_secondary;
    seen_root[root.index] = true;
    std::deque<std::pair<NodeRef, std::uint32_t>> queue{{root, 0}};
    while (!queue.empty()) {
        auto [node, dist] = queue.front();
        queue.pop_front();
        out.emplace_back(node, dist);
        if (dist == max_depth) continue;
        const Side other = node.side == Side::primary ? Side::secondary : Side::primary;
        auto& seen = other == Side::primary ? seen_primary : seen_secondary;
        for (std::uint32_t nb : neighbors(node)) {
            if (seen[nb]) continue;
            seen[nb] = true;
            queue.emplace_back(NodeRef{other, nb}, dist + 1);
        }
    }
    return out;
}

std::pair<std::uint32_t, double> TemporalBipartiteGraph::item_window_stats(
    std::uint32_t item, TimeWindow window) const {
    std::uint32_t n = 0;
    double sum = 0.0;
    for (std::uint32_t eidx : item_edges_by_time(item)) {
        const Edge& e = edges_[eidx];
        if (e.timestamp >= window.end) break;
        if (e.timestamp < window.start) continue;
        ++n;
        sum += e.rating;
    }
    return {n, n == 0 ? 0.0 : sum / n};
}

bool TemporalBipartiteGraph::structurally_equal(const TemporalBipartiteGraph& other) const {
    return primary_ids_ == other.primary_ids_ && secondary_ids_ == other.secondary_ids_ &&
           edges_ == other.edges_;
}

TemporalBipartiteGraph build_graph(std::span<const RatingEvent> events, BuildStats* stats) {
    std::vector<std::string> primary_ids;
    std::vector<std::string> secondary_ids;
    std::unordered_map<std::string, std::uint32_t> user_index;
    std::unordered_map<std::string, std::uint32_t> item_index;
    // (user,item) -> position in edge list; earliest timestamp wins.
    std::unordered_map<std::uint64_t, std::size_t> pair_slot;
    std::vector<Edge> edges;
    std::uint64_t duplicates = 0;

    for (const RatingEvent& ev : events) {
        auto [uit, uin] = user_index.try_emplace(ev.user_id,
                                                 static_cast<std::uint32_t>(primary_ids.size()));
        if (uin) primary_ids.push_back(ev.user_id);
        auto [iit, iin] = item_index.try_emplace(ev.item_id,
                                                 static_cast<std::uint32_t>(secondary_ids.size()));
        if (iin) secondary_ids.push_back(ev.item_id);
        const std::uint32_t u = uit->second;
        const std::uint32_t i = iit->second;
        const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | i;
        auto [pit, fresh] = pair_slot.try_emplace(key, edges.size());
        if (fresh) {
            edges.push_back({u, i, ev.rating, ev.timestamp});
        } else {
            ++duplicates;
            if (ev.timestamp < edges[pit->second].timestamp)
                edges[pit->second] = {u, i, ev.rating, ev.timestamp};
        }
    }
    if (stats) {
        stats->events = events.size();
        stats->duplicates = duplicates;
    }
    return {std::move(primary_ids), std::move(secondary_ids), std::move(edges)};
}

TimeWindow TimeWindow::all() {
    return {std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()};
}

}  // namespace ratenet
