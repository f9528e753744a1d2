#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "ratenet/graph.hpp"
#include "ratenet/motif.hpp"

namespace testutil {

using ratenet::Edge;
using ratenet::TemporalBipartiteGraph;

// Graph from (user,item) pairs; ratings default to 5, timestamps to the
// edge's position unless given.
inline TemporalBipartiteGraph make_graph(std::uint32_t users, std::uint32_t items,
                                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                                         const std::vector<double>& ratings = {},
                                         const std::vector<std::int64_t>& times = {}) {
    std::vector<std::string> user_ids, item_ids;
    for (std::uint32_t u = 0; u < users; ++u) user_ids.push_back("u" + std::to_string(u));
    for (std::uint32_t i = 0; i < items; ++i) item_ids.push_back("i" + std::to_string(i));
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        Edge e;
        e.primary = pairs[k].first;
        e.secondary = pairs[k].second;
        e.rating = k < ratings.size() ? ratings[k] : 5.0;
        e.timestamp = k < times.size() ? times[k] : static_cast<std::int64_t>(k);
        edges.push_back(e);
    }
    return {std::move(user_ids), std::move(item_ids), std::move(edges)};
}

inline TemporalBipartiteGraph cycle6() {
    return make_graph(3, 3, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}});
}

inline TemporalBipartiteGraph path6() {
    // u0-i0-u1-i1-u2-i2
    return make_graph(3, 3, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}});
}

inline TemporalBipartiteGraph k33() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t u = 0; u < 3; ++u)
        for (std::uint32_t i = 0; i < 3; ++i) pairs.emplace_back(u, i);
    return make_graph(3, 3, pairs);
}

inline TemporalBipartiteGraph cycle6_one_chord() {
    return make_graph(3, 3, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}, {0, 1}});
}

inline TemporalBipartiteGraph random_bipartite(std::mt19937& rng, std::uint32_t users,
                                               std::uint32_t items, double edge_prob) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t u = 0; u < users; ++u)
        for (std::uint32_t i = 0; i < items; ++i)
            if (coin(rng) < edge_prob) pairs.emplace_back(u, i);
    return make_graph(users, items, pairs);
}

// --- independent classification oracle -------------------------------------
// Works on a full 6x6 adjacency matrix and finds spanning paths/cycles by
// trying every ordering of the six nodes; shares nothing with the library's
// table-driven classifier.

struct OracleSubset {
    bool adj[6][6] = {};  // nodes 0-2 users, 3-5 items
};

inline OracleSubset oracle_subset(const TemporalBipartiteGraph& g,
                                  const std::array<std::uint32_t, 3>& users,
                                  const std::array<std::uint32_t, 3>& items) {
    OracleSubset s;
    for (int u = 0; u < 3; ++u)
        for (int i = 0; i < 3; ++i)
            if (g.has_edge(users[u], items[i])) s.adj[u][3 + i] = s.adj[3 + i][u] = true;
    return s;
}

inline int oracle_edges(const OracleSubset& s) {
    int e = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            if (s.adj[a][b]) ++e;
    return e;
}

inline bool oracle_ham_path(const OracleSubset& s) {
    std::array<int, 6> order = {0, 1, 2, 3, 4, 5};
    do {
        bool ok = true;
        for (int k = 0; k + 1 < 6 && ok; ++k) ok = s.adj[order[k]][order[k + 1]];
        if (ok) return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

inline bool oracle_ham_cycle(const OracleSubset& s) {
    std::array<int, 6> order = {0, 1, 2, 3, 4, 5};
    do {
        bool ok = s.adj[order[5]][order[0]];
        for (int k = 0; k + 1 < 6 && ok; ++k) ok = s.adj[order[k]][order[k + 1]];
        if (ok) return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

inline ratenet::MotifClass oracle_classify(const OracleSubset& s) {
    using ratenet::MotifClass;
    const int e = oracle_edges(s);
    if (e >= 6 && oracle_ham_cycle(s)) return static_cast<MotifClass>(e - 6);
    if (oracle_ham_path(s)) {
        if (e == 5) return MotifClass::Kappa0;
        if (e == 6) return MotifClass::Kappa1;
        if (e == 7) return MotifClass::Kappa2;
    }
    return MotifClass::None;
}

// Oracle classification memoized over the 512 possible induced masks; the
// table is derived solely from the permutation-search oracle above.
inline ratenet::MotifClass oracle_classify_mask(unsigned mask) {
    static const auto table = [] {
        std::array<ratenet::MotifClass, 512> t{};
        for (unsigned m = 0; m < 512; ++m) {
            OracleSubset s;
            for (int u = 0; u < 3; ++u)
                for (int i = 0; i < 3; ++i)
                    if ((m >> (u * 3 + i)) & 1) s.adj[u][3 + i] = s.adj[3 + i][u] = true;
            t[m] = oracle_classify(s);
        }
        return t;
    }();
    return table[mask];
}

// Brute-force subset census over all C(p,3)*C(s,3) subsets.
inline ratenet::MotifResult brute_force_census(const TemporalBipartiteGraph& g) {
    ratenet::MotifResult result;
    result.per_primary.assign(g.primary_count(), {});
    const std::uint32_t p = g.primary_count();
    const std::uint32_t s = g.secondary_count();
    for (std::uint32_t u0 = 0; u0 + 2 < p; ++u0)
        for (std::uint32_t u1 = u0 + 1; u1 + 1 < p; ++u1)
            for (std::uint32_t u2 = u1 + 1; u2 < p; ++u2)
                for (std::uint32_t i0 = 0; i0 + 2 < s; ++i0)
                    for (std::uint32_t i1 = i0 + 1; i1 + 1 < s; ++i1)
                        for (std::uint32_t i2 = i1 + 1; i2 < s; ++i2) {
                            const std::array<std::uint32_t, 3> users = {u0, u1, u2};
                            const std::array<std::uint32_t, 3> items = {i0, i1, i2};
                            unsigned mask = 0;
                            for (int u = 0; u < 3; ++u)
                                for (int i = 0; i < 3; ++i)
                                    if (g.has_edge(users[u], items[i])) mask |= 1u << (u * 3 + i);
                            const auto cls = oracle_classify_mask(mask);
                            if (cls == ratenet::MotifClass::None) continue;
                            result.global.add(cls);
                            for (std::uint32_t u : users) result.per_primary[u].add(cls);
                        }
    return result;
}

}  // namespace testutil
