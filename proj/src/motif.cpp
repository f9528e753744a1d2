#include "ratenet/motif.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>
#include <unordered_set>

namespace ratenet {

void MotifCounts::add(MotifClass cls) {
    switch (cls) {
        case MotifClass::Sigma0: ++sigma[0]; break;
        case MotifClass::Sigma1: ++sigma[1]; break;
        case MotifClass::Sigma2: ++sigma[2]; break;
        case MotifClass::Sigma3: ++sigma[3]; break;
        case MotifClass::Kappa0: ++kappa[0]; break;
        case MotifClass::Kappa1: ++kappa[1]; break;
        case MotifClass::Kappa2: ++kappa[2]; break;
        case MotifClass::None: break;
    }
}

MotifCounts& MotifCounts::operator+=(const MotifCounts& other) {
    for (int k = 0; k < 4; ++k) sigma[k] += other.sigma[k];
    for (int k = 0; k < 3; ++k) kappa[k] += other.kappa[k];
    return *this;
}

int subset_edge_count(SubsetAdjacency adj) {
    return std::popcount(static_cast<unsigned>(adj[0])) +
           std::popcount(static_cast<unsigned>(adj[1])) +
           std::popcount(static_cast<unsigned>(adj[2]));
}

namespace {

constexpr std::array<std::array<int, 3>, 6> kPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

bool edge(SubsetAdjacency adj, int u, int i) { return (adj[u] >> i) & 1; }

}  // namespace

bool hamiltonian_path_exists(SubsetAdjacency adj) {
    // Any spanning path of a 3+3 bipartite subset alternates u i u i u i.
    for (const auto& up : kPerms)
        for (const auto& ip : kPerms)
            if (edge(adj, up[0], ip[0]) && edge(adj, up[1], ip[0]) &&
                edge(adj, up[1], ip[1]) && edge(adj, up[2], ip[1]) &&
                edge(adj, up[2], ip[2]))
                return true;
    return false;
}

bool hamiltonian_cycle_exists(SubsetAdjacency adj) {
    for (const auto& up : kPerms)
        for (const auto& ip : kPerms)
            if (edge(adj, up[0], ip[0]) && edge(adj, up[1], ip[0]) &&
                edge(adj, up[1], ip[1]) && edge(adj, up[2], ip[1]) &&
                edge(adj, up[2], ip[2]) && edge(adj, up[0], ip[2]))
                return true;
    return false;
}

MotifClass classify_adjacency(SubsetAdjacency adj) {
    struct Table {
        std::array<MotifClass, 512> cls;
        Table() {
            for (unsigned mask = 0; mask < 512; ++mask) {
                SubsetAdjacency a = {static_cast<std::uint8_t>(mask & 7),
                                     static_cast<std::uint8_t>((mask >> 3) & 7),
                                     static_cast<std::uint8_t>((mask >> 6) & 7)};
                const int e = subset_edge_count(a);
                MotifClass c = MotifClass::None;
                if (e >= 6 && hamiltonian_cycle_exists(a)) {
                    c = static_cast<MotifClass>(e - 6);  // Sigma(chords)
                } else if (hamiltonian_path_exists(a)) {
                    if (e == 5) c = MotifClass::Kappa0;
                    else if (e == 6) c = MotifClass::Kappa1;
                    else if (e == 7) c = MotifClass::Kappa2;
                }
                cls[mask] = c;
            }
        }
    };
    static const Table table;
    const unsigned mask = static_cast<unsigned>(adj[0]) |
                          (static_cast<unsigned>(adj[1]) << 3) |
                          (static_cast<unsigned>(adj[2]) << 6);
    return table.cls[mask];
}

namespace {

SubsetAdjacency induced_adjacency(const TemporalBipartiteGraph& graph,
                                  const std::array<std::uint32_t, 3>& users,
                                  const std::array<std::uint32_t, 3>& items) {
    SubsetAdjacency adj{};
    for (int u = 0; u < 3; ++u) {
        auto nb = graph.neighbors(NodeRef::user(users[u]));
        std::uint8_t row = 0;
        for (int i = 0; i < 3; ++i)
            if (std::binary_search(nb.begin(), nb.end(), items[i])) row |= std::uint8_t(1u << i);
        adj[u] = row;
    }
    return adj;
}

// Canonical identity of a 3+3 subset: sorted user triple, sorted item triple.
struct SubsetKey {
    std::array<std::uint32_t, 6> v;
    friend bool operator==(const SubsetKey&, const SubsetKey&) = default;
    friend bool operator<(const SubsetKey& a, const SubsetKey& b) { return a.v < b.v; }
};

struct SubsetKeyHash {
    std::size_t operator()(const SubsetKey& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint32_t x : k.v) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h);
    }
};

SubsetKey make_key(std::uint32_t u0, std::uint32_t u1, std::uint32_t u2,
                   std::uint32_t i0, std::uint32_t i1, std::uint32_t i2) {
    std::array<std::uint32_t, 3> us = {u0, u1, u2};
    std::array<std::uint32_t, 3> is = {i0, i1, i2};
    std::sort(us.begin(), us.end());
    std::sort(is.begin(), is.end());
    return {{us[0], us[1], us[2], is[0], is[1], is[2]}};
}

// Seeds candidates with simple 5-edge alternating paths u0-i0-u1-i1-u2-i2;
// every classified subset spans such a path, so nothing countable is missed.
void seed_paths(const TemporalBipartiteGraph& graph, std::uint32_t begin, std::uint32_t end,
                std::uint64_t budget, std::unordered_set<SubsetKey, SubsetKeyHash>& keys) {
    for (std::uint32_t u0 = begin; u0 < end; ++u0) {
        for (std::uint32_t i0 : graph.neighbors(NodeRef::user(u0))) {
            for (std::uint32_t u1 : graph.neighbors(NodeRef::item(i0))) {
                if (u1 == u0) continue;
                for (std::uint32_t i1 : graph.neighbors(NodeRef::user(u1))) {
                    if (i1 == i0) continue;
                    for (std::uint32_t u2 : graph.neighbors(NodeRef::item(i1))) {
                        if (u2 == u0 || u2 == u1) continue;
                        for (std::uint32_t i2 : graph.neighbors(NodeRef::user(u2))) {
                            if (i2 == i0 || i2 == i1) continue;
                            keys.insert(make_key(u0, u1, u2, i0, i1, i2));
                            if (keys.size() > budget)
                                throw BudgetExceededError(
                                    "motif candidate-set budget exceeded (budget=" +
                                    std::to_string(budget) + ")");
                        }
                    }
                }
            }
        }
    }
}

struct Tally {
    MotifCounts global;
    std::vector<MotifCounts> per_primary;
};

void classify_range(const TemporalBipartiteGraph& graph, const std::vector<SubsetKey>& keys,
                    std::size_t begin, std::size_t end, Tally& tally) {
    for (std::size_t idx = begin; idx < end; ++idx) {
        const SubsetKey& k = keys[idx];
        const std::array<std::uint32_t, 3> users = {k.v[0], k.v[1], k.v[2]};
        const std::array<std::uint32_t, 3> items = {k.v[3], k.v[4], k.v[5]};
        const MotifClass cls = classify_adjacency(induced_adjacency(graph, users, items));
        if (cls == MotifClass::None) continue;
        tally.global.add(cls);
        for (std::uint32_t u : users) tally.per_primary[u].add(cls);
    }
}

}  // namespace

MotifClass classify_subset(const TemporalBipartiteGraph& graph,
                           const std::array<std::uint32_t, 3>& users,
                           const std::array<std::uint32_t, 3>& items) {
    if (users[0] == users[1] || users[0] == users[2] || users[1] == users[2] ||
        items[0] == items[1] || items[0] == items[2] || items[1] == items[2])
        throw DataError("subset nodes must be distinct");
    for (std::uint32_t u : users) graph.degree(NodeRef::user(u));
    for (std::uint32_t i : items) graph.degree(NodeRef::item(i));
    return classify_adjacency(induced_adjacency(graph, users, items));
}

MotifResult count_motifs(const TemporalBipartiteGraph& graph, const MotifOptions& options) {
    const unsigned workers = std::max(1u, options.workers);
    const std::uint32_t p = graph.primary_count();

    // Phase 1: path-seed candidate subsets, partitioned by start user.
    std::vector<std::unordered_set<SubsetKey, SubsetKeyHash>> local_sets(workers);
    {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint32_t begin = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(p) * w / workers);
            const std::uint32_t end = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(p) * (w + 1) / workers);
            threads.emplace_back([&, w, begin, end] {
                try {
                    seed_paths(graph, begin, end, options.budget, local_sets[w]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    // Merge-distinct into one sorted candidate list.
    std::vector<SubsetKey> keys;
    {
        auto& merged = local_sets[0];
        for (unsigned w = 1; w < workers; ++w) {
            for (const SubsetKey& k : local_sets[w]) merged.insert(k);
            local_sets[w].clear();
        }
        if (merged.size() > options.budget)
            throw BudgetExceededError("motif candidate-set budget exceeded (budget=" +
                                      std::to_string(options.budget) + ")");
        keys.assign(merged.begin(), merged.end());
    }
    std::sort(keys.begin(), keys.end());

    // Phase 2: classify each unique subset once; merge counts by addition.
    std::vector<Tally> tallies(workers);
    for (auto& t : tallies) t.per_primary.assign(p, MotifCounts{});
    {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = keys.size() * w / workers;
            const std::size_t end = keys.size() * (w + 1) / workers;
            threads.emplace_back(
                [&, w, begin, end] { classify_range(graph, keys, begin, end, tallies[w]); });
        }
        for (auto& t : threads) t.join();
    }

    MotifResult result;
    result.per_primary.assign(p, MotifCounts{});
    for (const Tally& t : tallies) {
        result.global += t.global;
        for (std::uint32_t u = 0; u < p; ++u) result.per_primary[u] += t.per_primary[u];
    }
    return result;
}

ClusteringProfile icc_from_counts(const MotifCounts& counts) {
    auto ratio = [](double num, double den) { return den == 0.0 ? 0.0 : num / den; };
    const auto& s = counts.sigma;
    const auto& k = counts.kappa;
    ClusteringProfile profile;
    profile.icc[0] = ratio(6.0 * s[0], 6.0 * s[0] + k[0]);
    profile.icc[1] = ratio(7.0 * s[1], 7.0 * s[1] + s[0] + k[1]);
    profile.icc[2] = ratio(4.0 * s[2], 4.0 * s[2] + s[1] + k[2]);
    profile.icc[3] = ratio(3.0 * s[3], 3.0 * s[3] + s[2]);
    return profile;
}

double opsahl_cstar(const TemporalBipartiteGraph& graph) {
    std::uint64_t total = 0;
    std::uint64_t closed = 0;
    for (std::uint32_t v2 = 0; v2 < graph.primary_count(); ++v2) {
        auto mid = graph.neighbors(NodeRef::user(v2));
        for (std::size_t a = 0; a < mid.size(); ++a) {
            for (std::size_t b = a + 1; b < mid.size(); ++b) {
                const std::uint32_t w1 = mid[a];
                const std::uint32_t w3 = mid[b];
                for (std::uint32_t v0 : graph.neighbors(NodeRef::item(w1))) {
                    if (v0 == v2) continue;
                    for (std::uint32_t v4 : graph.neighbors(NodeRef::item(w3))) {
                        if (v4 == v2 || v4 == v0) continue;
                        ++total;
                        // closed iff a third item links the endpoints
                        auto n0 = graph.neighbors(NodeRef::user(v0));
                        auto n4 = graph.neighbors(NodeRef::user(v4));
                        std::size_t x = 0, y = 0;
                        bool found = false;
                        while (x < n0.size() && y < n4.size()) {
                            if (n0[x] < n4[y]) ++x;
                            else if (n0[x] > n4[y]) ++y;
                            else {
                                if (n0[x] != w1 && n0[x] != w3) { found = true; break; }
                                ++x; ++y;
                            }
                        }
                        if (found) ++closed;
                    }
                }
            }
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(total);
}

}  // namespace ratenet
