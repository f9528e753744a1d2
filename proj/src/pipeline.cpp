#include "ratenet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_set>

namespace ratenet {

ModelParams derive_params(const DatasetProfile& profile) {
    ModelParams params;
    params.rho = calibrate_rho(profile.popular_min_avg, profile.popular_min_ratings,
                               profile.baseline_score);
    params.f = calibrate_f(profile.popular_min_ratings, profile.baseline_score);
    return params;
}

double critical_period_average(const TemporalBipartiteGraph& graph, std::int64_t window) {
    std::uint64_t rated_items = 0;
    std::uint64_t total = 0;
    for (std::uint32_t item = 0; item < graph.secondary_count(); ++item) {
        if (graph.degree(NodeRef::item(item)) == 0) continue;
        const FirstRating first = graph.first_rating(item);
        auto [n, mu] = graph.item_window_stats(item, {first.timestamp, first.timestamp + window});
        ++rated_items;
        total += n;
    }
    if (rated_items == 0) throw DataError("critical_period_average: no rated items");
    return static_cast<double>(total) / static_cast<double>(rated_items);
}

ItemOutcome actual_outcome(const TemporalBipartiteGraph& graph, std::uint32_t item,
                           const DatasetProfile& profile) {
    const FirstRating first = graph.first_rating(item);
    auto [n, mu] =
        graph.item_window_stats(item, {first.timestamp, first.timestamp + profile.critical_window});
    ItemOutcome out;
    out.item = item;
    out.t0 = first.timestamp;
    out.n_actual = n;
    out.mu_actual = mu;
    out.rho_actual = rho(mu, n, derive_params(profile).rho);
    return out;
}

Prediction predict_item(const TemporalBipartiteGraph& graph, std::uint32_t item,
                        const DatasetProfile& profile, const MotifOptions& motif_options) {
    const ModelParams params = derive_params(profile);
    EgoNetwork net = extract_ego_network(graph, item, profile);

    MotifResult motifs;
    try {
        motifs = count_motifs(net.graph, motif_options);
    } catch (const BudgetExceededError& e) {
        throw BudgetExceededError(std::string(e.what()) + " (item " +
                                  graph.secondary_ids()[item] + ")");
    }

    std::vector<ClusteringProfile> population;
    population.reserve(motifs.per_primary.size());
    for (const MotifCounts& counts : motifs.per_primary)
        population.push_back(icc_from_counts(counts));
    const DeltaProfile deltas = delta_profile(population[net.ego], population);

    Prediction pred;
    pred.item = item;
    pred.ego = net.original_ego;
    pred.first_rating = net.first_rating;
    pred.anchor_time = net.anchor_time;
    pred.n_hat = predict_n(net.first_rating, deltas);
    pred.mu_hat = predict_mu(pred.n_hat, net.first_rating, params.f, profile);
    pred.rho_hat = rho(pred.mu_hat, pred.n_hat, params.rho);
    return pred;
}

ItemFilter first_rating_between(std::int64_t from, std::int64_t to) {
    return [from, to](const TemporalBipartiteGraph& graph, std::uint32_t item) {
        if (graph.degree(NodeRef::item(item)) == 0) return false;
        const std::int64_t t0 = graph.first_rating(item).timestamp;
        return from <= t0 && t0 < to;
    };
}

EvalReport evaluate(const TemporalBipartiteGraph& graph, const ItemFilter& filter,
                    const DatasetProfile& profile, const EvalConfig& config) {
    if (config.rho_tolerance <= 0.0) throw ConfigError("rho_tolerance must be positive");
    std::vector<std::uint32_t> items;
    for (std::uint32_t item = 0; item < graph.secondary_count(); ++item)
        if (graph.degree(NodeRef::item(item)) > 0 && (!filter || filter(graph, item)))
            items.push_back(item);

    MotifOptions motif_options;
    motif_options.budget = config.motif_budget;

    std::vector<EvalRow> rows(items.size());
    std::vector<std::exception_ptr> errors(std::max<unsigned>(1, config.workers));
    const unsigned workers = std::max<unsigned>(1, config.workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (std::size_t idx = w; idx < items.size(); idx += workers) {
                    const std::uint32_t item = items[idx];
                    EvalRow row;
                    row.actual = actual_outcome(graph, item, profile);
                    row.predicted = predict_item(graph, item, profile, motif_options);
                    row.abs_err = std::abs(row.predicted.rho_hat - row.actual.rho_actual);
                    row.pop_success = row.abs_err < config.rho_tolerance;
                    const double n = row.actual.n_actual;
                    row.n_success = std::abs(row.predicted.n_hat - n) <=
                                    std::max(config.n_band_abs, config.n_band_rel * n);
                    rows[idx] = row;
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);

    EvalReport report;
    report.rows = std::move(rows);
    report.items = report.rows.size();
    for (const EvalRow& row : report.rows) {
        if (row.pop_success) ++report.pop_successes;
        if (row.n_success) ++report.n_successes;
    }
    report.pop_success_rate =
        report.items == 0 ? 0.0
                          : static_cast<double>(report.pop_successes) / static_cast<double>(report.items);
    report.n_success_rate =
        report.items == 0 ? 0.0
                          : static_cast<double>(report.n_successes) / static_cast<double>(report.items);
    report.config = config;
    report.profile_name = profile.name;
    return report;
}

std::vector<DecayPoint> decay_profile(const TemporalBipartiteGraph& graph, std::uint32_t item) {
    auto by_time = graph.item_edges_by_time(item);
    if (by_time.empty()) throw DataError("decay_profile: item has no ratings");
    std::vector<DecayPoint> series;
    series.reserve(by_time.size());
    const std::int64_t t0 = graph.edges()[by_time.front()].timestamp;
    double sum = 0.0;
    std::int64_t prev = 0;
    for (std::size_t k = 0; k < by_time.size(); ++k) {
        const Edge& e = graph.edges()[by_time[k]];
        sum += e.rating;
        DecayPoint point;
        point.offset = e.timestamp - t0;
        if (k > 0) point.gap = e.timestamp - prev;
        point.running_mean = sum / static_cast<double>(k + 1);
        series.push_back(point);
        prev = e.timestamp;
    }
    return series;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DataError("pearson: need >= 2 paired samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;  // zero-variance rule
    return sxy / std::sqrt(sxx * syy);
}

DiagnosticReport diagnostic_correlations(const TemporalBipartiteGraph& graph,
                                         const std::vector<std::uint32_t>& items,
                                         const DatasetProfile& profile,
                                         const std::vector<std::int64_t>& lookbacks) {
    if (items.size() < 2) throw DataError("diagnostic_correlations: need >= 2 items");
    DiagnosticReport report;
    report.lookbacks = lookbacks;
    for (std::uint32_t item : items) {
        const FirstRating first = graph.first_rating(item);
        DiagnosticRow row;
        row.item = item;
        row.ego = first.user;
        const ItemOutcome outcome = actual_outcome(graph, item, profile);
        row.n_actual = outcome.n_actual;
        row.mu_actual = outcome.mu_actual;
        for (std::int64_t lb : lookbacks) {
            const TimeWindow window{first.timestamp - lb, first.timestamp};
            std::uint32_t deg = 0;
            auto edge_indexes = graph.incident_edges(NodeRef::user(first.user));
            for (std::uint32_t eidx : edge_indexes)
                if (window.contains(graph.edges()[eidx].timestamp)) ++deg;
            row.ego_degrees.push_back(deg);
        }
        {
            // second neighbours within the profile's lookback window
            const TimeWindow window{first.timestamp - profile.lookback_window, first.timestamp};
            std::unordered_set<std::uint32_t> second;
            auto ego_edges = graph.incident_edges(NodeRef::user(first.user));
            auto ego_nbs = graph.neighbors(NodeRef::user(first.user));
            for (std::size_t k = 0; k < ego_nbs.size(); ++k) {
                if (!window.contains(graph.edges()[ego_edges[k]].timestamp)) continue;
                const std::uint32_t mid = ego_nbs[k];
                auto mid_edges = graph.incident_edges(NodeRef::item(mid));
                auto mid_nbs = graph.neighbors(NodeRef::item(mid));
                for (std::size_t j = 0; j < mid_nbs.size(); ++j) {
                    if (!window.contains(graph.edges()[mid_edges[j]].timestamp)) continue;
                    if (mid_nbs[j] != first.user) second.insert(mid_nbs[j]);
                }
            }
            row.second_neighbours = second.size();
        }
        report.rows.push_back(std::move(row));
    }

    std::vector<double> n_actual;
    std::vector<double> mu_actual;
    for (const DiagnosticRow& row : report.rows) {
        n_actual.push_back(row.n_actual);
        mu_actual.push_back(row.mu_actual);
    }
    for (std::size_t li = 0; li < lookbacks.size(); ++li) {
        std::vector<double> degs;
        for (const DiagnosticRow& row : report.rows) degs.push_back(row.ego_degrees[li]);
        report.degree_correlations.push_back(pearson(degs, n_actual));
    }
    std::vector<double> seconds;
    for (const DiagnosticRow& row : report.rows) seconds.push_back(row.second_neighbours);
    report.second_neighbour_correlation = pearson(seconds, n_actual);
    report.mu_vs_n_correlation = pearson(mu_actual, n_actual);
    return report;
}

}  // namespace ratenet
