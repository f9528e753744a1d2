#pragma once

#include <array>
#include <span>

#include "ratenet/motif.hpp"

namespace ratenet {

struct LogisticParams {
    double c = 0.0;
    double k = 0.0;
};

// How far the ego's four coefficients sit from the ego-network average, in
// standard deviations, with the direction carried separately.
struct DeltaProfile {
    std::array<double, 4> delta{};
    std::array<bool, 4> below_mean{};
};

struct Prediction {
    std::uint32_t item = 0;
    std::uint32_t ego = 0;
    double first_rating = 0.0;
    std::int64_t anchor_time = 0;
    double n_hat = 0.0;
    double mu_hat = 0.0;
    double rho_hat = 0.0;
};

// Fixes rho(mu_star, n_star) = 0.5 and rho at mu*n = 0 to epsilon.
LogisticParams calibrate_rho(double mu_star, double n_star, double epsilon);

// Popularity score rho(mu, n) = 1 / (1 + exp(-k (mu n - c))).
double rho(double mu, double n, LogisticParams params);

// Fixes f(0) = 1 + epsilon and f(n_star) = 4.
LogisticParams calibrate_f(double n_star, double epsilon);

// Rating response f(n) = 1 + 4 / (1 + exp(-k (n - c))), range (1, 5).
double rating_response(double n, LogisticParams params);

// Population mean/sd per coefficient over the whole ego network; delta = 0
// where the sd vanishes. below_mean uses <= so ties count as lower.
DeltaProfile delta_profile(const ClusteringProfile& ego,
                           std::span<const ClusteringProfile> population);

// Weighted deviation sum: weights (2,3,4,5) multiply below-mean terms and
// divide above-mean terms; the whole sum is scaled by r/3.
double predict_n(double r, const DeltaProfile& deltas);

// (f(n_hat) + r) / 2, clamped to the rating scale.
double predict_mu(double n_hat, double r, LogisticParams f_params, const DatasetProfile& profile);

}  // namespace ratenet
