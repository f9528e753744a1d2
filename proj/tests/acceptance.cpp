// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any required criterion fails. Criterion 8 (full-data) runs only
// when RATENET_ML10M points at a MovieLens ratings file.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "ratenet/parse.hpp"
#include "ratenet/pipeline.hpp"
#include "ratenet/snapshot.hpp"
#include "ratenet/synth.hpp"
#include "test_util.hpp"

using namespace ratenet;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 200 seeded random graphs: exact equality with the brute-force census.
void criterion1_and_2() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20260823);
    bool counts_ok = true;
    bool consistency_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t users = 6 + rng() % 3;  // up to 8
        const std::uint32_t items = 6 + rng() % 3;
        const double prob = 0.2 + 0.4 * static_cast<double>(rng() % 1000) / 1000.0;
        auto g = random_bipartite(rng, users, items, prob);
        auto expected = brute_force_census(g);
        auto got = count_motifs(g, {1u + static_cast<unsigned>(trial % 4)});
        if (!(got.global == expected.global) || got.per_primary != expected.per_primary)
            counts_ok = false;
        MotifCounts sum;
        for (const auto& per : got.per_primary) sum += per;
        for (int k = 0; k < 4; ++k)
            if (sum.sigma[k] != 3 * got.global.sigma[k]) consistency_ok = false;
        for (int k = 0; k < 3; ++k)
            if (sum.kappa[k] != 3 * got.global.kappa[k]) consistency_ok = false;
    }
    const double secs = elapsed_s(start);
    report(1, counts_ok && secs < 60.0,
           "200 random graphs, " + std::to_string(secs) + " s");

    // plus 1000 random subsets classified into exactly one class
    bool partition_ok = true;
    std::uint64_t subsets = 0;
    while (subsets < 1000) {
        auto g = random_bipartite(rng, 6, 6, 0.2 + 0.4 * (rng() % 100) / 100.0);
        std::array<std::uint32_t, 3> u = {static_cast<std::uint32_t>(rng() % 6),
                                          static_cast<std::uint32_t>(rng() % 6),
                                          static_cast<std::uint32_t>(rng() % 6)};
        std::array<std::uint32_t, 3> i = {static_cast<std::uint32_t>(rng() % 6),
                                          static_cast<std::uint32_t>(rng() % 6),
                                          static_cast<std::uint32_t>(rng() % 6)};
        if (u[0] == u[1] || u[0] == u[2] || u[1] == u[2]) continue;
        if (i[0] == i[1] || i[0] == i[2] || i[1] == i[2]) continue;
        ++subsets;
        const MotifClass cls = classify_subset(g, u, i);
        unsigned mask = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (g.has_edge(u[a], i[b])) mask |= 1u << (a * 3 + b);
        // exactly one class, and it is the oracle's class
        if (cls != oracle_classify_mask(mask)) partition_ok = false;
        if (cls != classify_subset(g, u, i)) partition_ok = false;
    }
    // class indicators over a full census sum to C(p,3) * C(s,3)
    {
        auto g = random_bipartite(rng, 7, 7, 0.4);
        std::uint64_t classified = 0;
        std::uint64_t none = 0;
        for (std::uint32_t a = 0; a < 7; ++a)
            for (std::uint32_t b = a + 1; b < 7; ++b)
                for (std::uint32_t c = b + 1; c < 7; ++c)
                    for (std::uint32_t x = 0; x < 7; ++x)
                        for (std::uint32_t y = x + 1; y < 7; ++y)
                            for (std::uint32_t z = y + 1; z < 7; ++z) {
                                if (classify_subset(g, {a, b, c}, {x, y, z}) == MotifClass::None)
                                    ++none;
                                else
                                    ++classified;
                            }
        if (classified + none != 35ull * 35ull) partition_ok = false;
    }
    report(2, partition_ok && consistency_ok, "1000 subsets + per-user sums");
}

void criterion3() {
    bool ok = true;
    auto c = count_motifs(cycle6());
    ok &= c.global.sigma == std::array<std::uint64_t, 4>{1, 0, 0, 0};
    ok &= c.global.kappa == std::array<std::uint64_t, 3>{0, 0, 0};
    ok &= icc_from_counts(c.global).icc[0] == 1.0;
    ok &= opsahl_cstar(cycle6()) == 1.0;

    auto p = count_motifs(path6());
    ok &= p.global.kappa == std::array<std::uint64_t, 3>{1, 0, 0};
    ok &= p.global.sigma == std::array<std::uint64_t, 4>{0, 0, 0, 0};
    ok &= icc_from_counts(p.global).icc[0] == 0.0;

    auto k = count_motifs(k33());
    ok &= k.global.sigma == std::array<std::uint64_t, 4>{0, 0, 0, 1};
    ok &= icc_from_counts(k.global).icc[3] == 1.0;

    auto one = count_motifs(cycle6_one_chord());
    ok &= one.global.sigma == std::array<std::uint64_t, 4>{0, 1, 0, 0};
    ok &= icc_from_counts(one.global).icc[1] == 1.0;
    report(3, ok, "named fixtures");
}

void criterion4() {
    bool ok = true;
    auto ml = calibrate_rho(4.0, 29.0, 5e-4);
    ok &= ml.c == 116.0;
    ok &= std::abs(ml.k - 0.0655) <= 0.0006;
    auto digg = calibrate_rho(5.0, 6.0, 5e-4);
    ok &= digg.c == 30.0;
    ok &= std::abs(digg.k - 0.2533) <= 0.002;
    auto fml = calibrate_f(29.0, 5e-4);
    ok &= std::abs(fml.k - 0.3478) <= 0.001;
    ok &= std::abs(fml.c - 25.84) <= 0.05;
    ok &= std::abs(rho(4.0, 29.0, ml) - 0.5) <= 1e-12;
    ok &= std::abs(rating_response(29.0, fml) - 4.0) <= 1e-6;
    report(4, ok, "calibration closed forms");
}

void criterion5() {
    bool ok = true;
    DeltaProfile all_below;
    all_below.delta = {1.0, 1.0, 1.0, 1.0};
    all_below.below_mean = {true, true, true, true};
    ok &= predict_n(3.0, all_below) == 14.0;
    DeltaProfile mixed = all_below;
    mixed.below_mean = {true, true, false, false};
    ok &= std::abs(predict_n(3.0, mixed) - 5.45) < 1e-12;

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        DeltaProfile d;
        for (int k = 0; k < 4; ++k) {
            d.delta[k] = unit(rng);
            d.below_mean[k] = rng() % 2 == 0;
        }
        const double r = 1.0 + unit(rng);
        const double lambda = unit(rng);
        if (std::abs(predict_n(lambda * r, d) - lambda * predict_n(r, d)) > 1e-12) ok = false;
        const int k = static_cast<int>(rng() % 4);
        const double scale = 1.0 + unit(rng);
        DeltaProfile scaled = d;
        scaled.delta[k] *= scale;
        DeltaProfile only;
        only.delta[k] = d.delta[k];
        only.below_mean = d.below_mean;
        const double expect = predict_n(r, d) + (scale - 1.0) * predict_n(r, only);
        if (std::abs(predict_n(r, scaled) - expect) > 1e-12) ok = false;
    }
    report(5, ok, "weighted deviation arithmetic");
}

TemporalBipartiteGraph preknowledge_fixture(bool poisoned) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs = {
        {0, 3}, {0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}, {3, 0}};
    std::vector<double> ratings = {4.0, 3.0, 3.0, 3.0, 3.0, 3.0, 3.0, 3.0};
    std::vector<std::int64_t> times = {1000, 900, 901, 902, 903, 904, 905, 906};
    std::uint32_t users = 4, items = 4;
    if (poisoned) {
        users = 5;
        items = 5;
        const std::vector<std::pair<std::uint32_t, std::uint32_t>> extra = {
            {4, 0}, {4, 1}, {4, 2}, {4, 4}, {0, 4}, {1, 4}, {1, 2}, {2, 0}, {3, 1}, {3, 2}};
        std::int64_t t = 1000;
        for (auto pr : extra) {
            pairs.push_back(pr);
            ratings.push_back(1.0);
            times.push_back(t++);
        }
    }
    return make_graph(users, items, pairs, ratings, times);
}

std::string report_bytes(const EvalReport& report) {
    std::ostringstream out;
    for (const EvalRow& row : report.rows) {
        out.precision(17);
        out << row.actual.item << "," << row.actual.n_actual << "," << row.actual.mu_actual << ","
            << row.actual.rho_actual << "," << row.predicted.n_hat << "," << row.predicted.mu_hat
            << "," << row.predicted.rho_hat << "," << row.abs_err << "," << row.pop_success << ","
            << row.n_success << "\n";
    }
    out << report.pop_successes << "/" << report.n_successes << "/" << report.items;
    return out.str();
}

void criterion6() {
    DatasetProfile profile = DatasetProfile::movielens();
    profile.critical_window = 1000;
    profile.lookback_window = 500;
    auto clean = predict_item(preknowledge_fixture(false), 3, profile);
    auto dirty = predict_item(preknowledge_fixture(true), 3, profile);
    // identical predictions although every node gained edges at t >= t0
    bool ok = clean.n_hat == dirty.n_hat && clean.mu_hat == dirty.mu_hat &&
              clean.rho_hat == dirty.rho_hat && clean.ego == dirty.ego;

    SynthConfig cfg;
    cfg.seed = 42;
    cfg.users = 120;
    cfg.items = 30;
    auto g = build_graph(generate_events(cfg));
    const DatasetProfile ml = DatasetProfile::movielens();
    std::string first;
    for (unsigned workers : {1u, 2u, 8u}) {
        EvalConfig config;
        config.workers = workers;
        const std::string bytes = report_bytes(evaluate(g, {}, ml, config));
        if (first.empty()) first = bytes;
        else if (bytes != first) ok = false;
    }
    report(6, ok, "pre-knowledge + worker determinism");
}

int run_cli(const std::string& args, const fs::path& stdout_to = {}) {
    std::string cmd = std::string(RATENET_CLI_PATH) + " " + args;
    if (!stdout_to.empty()) cmd += " > " + stdout_to.string();
    return std::system(cmd.c_str());
}

void criterion7() {
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir = fs::temp_directory_path() / "ratenet_acceptance";
    fs::create_directories(dir);
    bool ok = true;
    auto once = [&](const std::string& tag) {
        const fs::path data = dir / ("events_" + tag + ".dat");
        const fs::path snap = dir / ("graph_" + tag + ".snap");
        const fs::path csv = dir / ("report_" + tag + ".csv");
        const fs::path summary = dir / ("summary_" + tag + ".txt");
        ok &= run_cli("synth --seed 42 --users 200 --items 50 --out " + data.string()) == 0;
        ok &= run_cli("ingest --input " + data.string() + " --snapshot " + snap.string(),
                      dir / ("ingest_" + tag + ".txt")) == 0;
        ok &= run_cli("evaluate --snapshot " + snap.string() + " --workers 4 --out " +
                          csv.string(),
                      summary) == 0;
        std::ifstream in(csv);
        std::stringstream buf;
        buf << in.rdbuf();
        std::ifstream sin(summary);
        std::stringstream sbuf;
        sbuf << sin.rdbuf();
        return buf.str() + "\n---\n" + sbuf.str();
    };
    const std::string run1 = once("a");
    const std::string run2 = once("b");
    ok &= !run1.empty() && run1 == run2;
    ok &= run1.find("item_id,n,mu,rho,n_hat,mu_hat,rho_hat,abs_err,pop_success,n_success") !=
          std::string::npos;
    ok &= run1.find("pop_success_rate=") != std::string::npos;
    const double secs = elapsed_s(start);
    report(7, ok && secs < 120.0, "end-to-end pipeline, " + std::to_string(secs) + " s");
}

void criterion8_digg(const char* path) {
    const auto start = std::chrono::steady_clock::now();
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        report(8, false, "cannot open " + std::string(path));
        return;
    }
    const DatasetProfile profile = DatasetProfile::digg();
    auto graph = build_graph(parse_konect(in, profile, ParseMode::lenient));
    const double avg = critical_period_average(graph, profile.critical_window);
    bool ok = std::abs(avg - 6.0) <= 2.0;

    // 350 sampled stories
    std::vector<std::uint32_t> rated;
    for (std::uint32_t i = 0; i < graph.secondary_count(); ++i)
        if (graph.degree(NodeRef::item(i)) > 0) rated.push_back(i);
    std::mt19937 rng(350);
    std::shuffle(rated.begin(), rated.end(), rng);
    rated.resize(std::min<std::size_t>(350, rated.size()));
    std::sort(rated.begin(), rated.end());
    std::vector<bool> chosen(graph.secondary_count(), false);
    for (std::uint32_t i : rated) chosen[i] = true;
    EvalConfig config;
    config.workers = std::max(1u, std::thread::hardware_concurrency());
    auto eval = evaluate(
        graph,
        [&chosen](const TemporalBipartiteGraph&, std::uint32_t item) { return bool(chosen[item]); },
        profile, config);
    ok &= std::abs(eval.pop_success_rate - 0.51) <= 0.05;
    report(8, ok,
           "digg: critical avg " + std::to_string(avg) + ", pop rate " +
               std::to_string(eval.pop_success_rate) + ", " + std::to_string(elapsed_s(start)) +
               " s");
}

void criterion8() {
    const char* path = std::getenv("RATENET_ML10M");
    const char* digg_path = std::getenv("RATENET_DIGG");
    if (!path && !digg_path) {
        std::cout << "criterion 8: SKIP (set RATENET_ML10M to a MovieLens 10M "
                     "ratings.dat and/or RATENET_DIGG to a KONECT digg-votes "
                     "edge list to enable the full-data check)"
                  << std::endl;
        return;
    }
    if (digg_path) criterion8_digg(digg_path);
    if (!path) return;
    const auto start = std::chrono::steady_clock::now();
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        report(8, false, "cannot open " + std::string(path));
        return;
    }
    auto events = parse_movielens(in, DatasetProfile::movielens(), ParseMode::lenient);
    auto graph = build_graph(events);
    const DatasetProfile profile = DatasetProfile::movielens();

    const double avg = critical_period_average(graph, profile.critical_window);
    bool ok = std::abs(avg - 29.0) <= 3.0;

    std::vector<std::uint32_t> items;
    for (std::uint32_t i = 0; i < graph.secondary_count(); ++i)
        if (graph.degree(NodeRef::item(i)) > 0) items.push_back(i);
    auto diag = diagnostic_correlations(graph, items, profile, {profile.lookback_window});
    ok &= std::abs(diag.mu_vs_n_correlation - 0.183) <= 0.02;

    // items first rated 2004-2007 as the release-date proxy
    EvalConfig config;
    config.workers = std::max(1u, std::thread::hardware_concurrency());
    auto eval = evaluate(graph, first_rating_between(1072915200, 1199145600), profile, config);
    ok &= std::abs(eval.pop_success_rate - 0.66) <= 0.05;
    ok &= std::abs(eval.n_success_rate - 0.53) <= 0.05;
    report(8, ok,
           "critical avg " + std::to_string(avg) + ", mu-n corr " +
               std::to_string(diag.mu_vs_n_correlation) + ", pop rate " +
               std::to_string(eval.pop_success_rate) + ", n rate " +
               std::to_string(eval.n_success_rate) + ", " + std::to_string(elapsed_s(start)) +
               " s");
}

}  // namespace

int main() {
    criterion1_and_2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::cout << (failures == 0 ? "all criteria passed" : "failures: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
