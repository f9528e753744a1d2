#pragma once

#include <functional>
#include <optional>

#include "ratenet/ego.hpp"
#include "ratenet/model.hpp"

namespace ratenet {

struct ItemOutcome {
    std::uint32_t item = 0;
    std::int64_t t0 = 0;
    std::uint32_t n_actual = 0;
    double mu_actual = 0.0;
    double rho_actual = 0.0;
};

struct EvalConfig {
    double rho_tolerance = 0.05;
    double n_band_abs = 5.0;
    double n_band_rel = 0.5;
    unsigned workers = 1;
    std::uint64_t motif_budget = 200'000'000;
};

struct EvalRow {
    ItemOutcome actual;
    Prediction predicted;
    double abs_err = 0.0;
    bool pop_success = false;
    bool n_success = false;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    std::uint64_t items = 0;
    std::uint64_t pop_successes = 0;
    std::uint64_t n_successes = 0;
    double pop_success_rate = 0.0;
    double n_success_rate = 0.0;
    EvalConfig config;
    std::string profile_name;
};

// Calibrated parameter pair derived from a dataset profile.
struct ModelParams {
    LogisticParams rho;
    LogisticParams f;
};
ModelParams derive_params(const DatasetProfile& profile);

// Mean rating count of all rated items inside [t0, t0 + W).
double critical_period_average(const TemporalBipartiteGraph& graph, std::int64_t window);

ItemOutcome actual_outcome(const TemporalBipartiteGraph& graph, std::uint32_t item,
                           const DatasetProfile& profile);

// Ego extraction -> motif counting -> delta profile -> n/mu/rho predictions.
// Reads no edge with timestamp >= t0 other than the item's first rating.
Prediction predict_item(const TemporalBipartiteGraph& graph, std::uint32_t item,
                        const DatasetProfile& profile, const MotifOptions& motif_options = {});

using ItemFilter = std::function<bool(const TemporalBipartiteGraph&, std::uint32_t item)>;

// Filter selecting items whose first rating falls inside [from, to).
ItemFilter first_rating_between(std::int64_t from, std::int64_t to);

EvalReport evaluate(const TemporalBipartiteGraph& graph, const ItemFilter& filter,
                    const DatasetProfile& profile, const EvalConfig& config = {});

struct DecayPoint {
    std::int64_t offset = 0;               // t - t0
    std::optional<std::int64_t> gap = {};  // to previous rating; absent on the first
    double running_mean = 0.0;
};
std::vector<DecayPoint> decay_profile(const TemporalBipartiteGraph& graph, std::uint32_t item);

struct DiagnosticRow {
    std::uint32_t item = 0;
    std::uint32_t ego = 0;
    std::vector<std::uint32_t> ego_degrees;  // one per requested lookback
    std::uint64_t second_neighbours = 0;
    std::uint32_t n_actual = 0;
    double mu_actual = 0.0;
};

struct DiagnosticReport {
    std::vector<std::int64_t> lookbacks;
    std::vector<DiagnosticRow> rows;
    std::vector<double> degree_correlations;  // vs n_actual, one per lookback
    double second_neighbour_correlation = 0.0;
    double mu_vs_n_correlation = 0.0;
};

// Pearson correlations of the candidate ego predictors against realized
// rating counts; zero-variance inputs correlate as 0.
DiagnosticReport diagnostic_correlations(const TemporalBipartiteGraph& graph,
                                         const std::vector<std::uint32_t>& items,
                                         const DatasetProfile& profile,
                                         const std::vector<std::int64_t>& lookbacks);

double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace ratenet
