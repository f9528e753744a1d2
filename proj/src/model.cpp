#include "ratenet/model.hpp"

#include <algorithm>
#include <cmath>

namespace ratenet {

LogisticParams calibrate_rho(double mu_star, double n_star, double epsilon) {
    if (mu_star * n_star <= 0.0) throw ConfigError("mu_star * n_star must be positive");
    if (epsilon <= 0.0 || epsilon >= 0.5) throw ConfigError("epsilon must be in (0, 0.5)");
    LogisticParams params;
    params.c = mu_star * n_star;
    params.k = std::log(1.0 / epsilon - 1.0) / params.c;
    return params;
}

double rho(double mu, double n, LogisticParams params) {
    return 1.0 / (1.0 + std::exp(-params.k * (mu * n - params.c)));
}

LogisticParams calibrate_f(double n_star, double epsilon) {
    if (n_star < 1.0) throw ConfigError("n_star must be >= 1");
    if (epsilon <= 0.0 || epsilon >= 2.0) throw ConfigError("epsilon must be in (0, 2)");
    // f(0) = 1 + epsilon gives c k = ln(4/eps - 1); f(n*) = 4 gives n* k = c k + ln 3.
    const double ck = std::log(4.0 / epsilon - 1.0);
    LogisticParams params;
    params.k = (ck + std::log(3.0)) / n_star;
    params.c = ck / params.k;
    return params;
}

double rating_response(double n, LogisticParams params) {
    return 1.0 + 4.0 / (1.0 + std::exp(-params.k * (n - params.c)));
}

DeltaProfile delta_profile(const ClusteringProfile& ego,
                           std::span<const ClusteringProfile> population) {
    if (population.empty()) throw DataError("delta_profile: empty population");
    DeltaProfile out;
    const double count = static_cast<double>(population.size());
    for (int k = 0; k < 4; ++k) {
        double mean = 0.0;
        double lo = population[0].icc[k], hi = lo;
        for (const ClusteringProfile& p : population) {
            mean += p.icc[k];
            lo = std::min(lo, p.icc[k]);
            hi = std::max(hi, p.icc[k]);
        }
        mean /= count;
        double var = 0.0;
        for (const ClusteringProfile& p : population) {
            const double d = p.icc[k] - mean;
            var += d * d;
        }
        var /= count;  // population variance
        // variance is exactly zero iff all values coincide; the rounded mean
        // must not manufacture a spurious deviation
        const double sd = lo == hi ? 0.0 : std::sqrt(var);
        out.delta[k] = sd == 0.0 ? 0.0 : std::abs(ego.icc[k] - mean) / sd;
        out.below_mean[k] = ego.icc[k] <= mean;
    }
    return out;
}

double predict_n(double r, const DeltaProfile& deltas) {
    static constexpr std::array<double, 4> weights = {2.0, 3.0, 4.0, 5.0};
    double sum = 0.0;
    for (int k = 0; k < 4; ++k)
        sum += deltas.below_mean[k] ? weights[k] * deltas.delta[k]
                                    : deltas.delta[k] / weights[k];
    return std::max(0.0, r / 3.0 * sum);
}

double predict_mu(double n_hat, double r, LogisticParams f_params, const DatasetProfile& profile) {
    if (profile.implicit_rating) return *profile.implicit_rating;
    const double mu = (rating_response(n_hat, f_params) + r) / 2.0;
    return std::clamp(mu, profile.min_rating, profile.max_rating);
}

}  // namespace ratenet
