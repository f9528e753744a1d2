#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ratenet/graph.hpp"

namespace ratenet {

// The seven classes a 3-user/3-item subset can fall into: chorded 6-cycles
// (Sigma0..Sigma3 by chord count) and spanning 5-paths with 0/1/2 extra edges
// (Kappa0..Kappa2). Subsets with no spanning path are None.
enum class MotifClass : std::uint8_t {
    Sigma0,
    Sigma1,
    Sigma2,
    Sigma3,
    Kappa0,
    Kappa1,
    Kappa2,
    None,
};

struct MotifCounts {
    std::array<std::uint64_t, 4> sigma{};
    std::array<std::uint64_t, 3> kappa{};

    void add(MotifClass cls);
    MotifCounts& operator+=(const MotifCounts& other);
    friend bool operator==(const MotifCounts&, const MotifCounts&) = default;
};

// The four chord-class clustering coefficients, each in [0,1].
struct ClusteringProfile {
    std::array<double, 4> icc{};
    friend bool operator==(const ClusteringProfile&, const ClusteringProfile&) = default;
};

// Induced adjacency of a 3+3 subset: row u in [0,3) holds a bit per item
// column i in [0,3).
using SubsetAdjacency = std::array<std::uint8_t, 3>;

int subset_edge_count(SubsetAdjacency adj);
bool hamiltonian_path_exists(SubsetAdjacency adj);
bool hamiltonian_cycle_exists(SubsetAdjacency adj);

MotifClass classify_adjacency(SubsetAdjacency adj);

// Classifies the induced subgraph on three distinct users and three distinct
// items of the graph.
MotifClass classify_subset(const TemporalBipartiteGraph& graph,
                           const std::array<std::uint32_t, 3>& users,
                           const std::array<std::uint32_t, 3>& items);

struct MotifOptions {
    unsigned workers = 1;
    // Cap on unique candidate node sets; exceeding it raises BudgetExceededError.
    std::uint64_t budget = 200'000'000;
};

struct MotifResult {
    MotifCounts global;
    std::vector<MotifCounts> per_primary;  // indexed by user
};

// Exact subset-granularity counts, globally and restricted to each user.
// Results are identical for any worker count.
MotifResult count_motifs(const TemporalBipartiteGraph& graph, const MotifOptions& options = {});

// Eqs. for the four coefficients; a zero denominator yields 0.
ClusteringProfile icc_from_counts(const MotifCounts& counts);

// Opsahl's C*: closed 4-paths over 4-paths (primary endpoints, counted once
// up to reversal); 0 when the graph has no 4-paths.
double opsahl_cstar(const TemporalBipartiteGraph& graph);

}  // namespace ratenet
