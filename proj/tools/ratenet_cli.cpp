// Batch front end: ingest rating streams, count motifs, predict and evaluate
// item popularity, export plot-ready CSVs, and generate synthetic fixtures.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ratenet/ego.hpp"
#include "ratenet/parse.hpp"
#include "ratenet/pipeline.hpp"
#include "ratenet/snapshot.hpp"
#include "ratenet/synth.hpp"

namespace {

using namespace ratenet;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitStrictData = 4;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct ProfileFlags {
    std::string name = "movielens";
    std::optional<double> rating_min, rating_max, implicit, popular_avg, epsilon;
    std::optional<std::int64_t> critical_window, lookback_window;
    std::optional<std::uint32_t> popular_ratings;

    void attach(CLI::App* cmd) {
        cmd->add_option("--profile", name, "built-in dataset profile (movielens|digg)")
            ->envname("RATENET_PROFILE");
        cmd->add_option("--rating-min", rating_min, "override: minimum rating");
        cmd->add_option("--rating-max", rating_max, "override: maximum rating");
        cmd->add_option("--implicit-rating", implicit, "override: fixed rating for ratingless data");
        cmd->add_option("--critical-window", critical_window, "override: W in seconds");
        cmd->add_option("--lookback-window", lookback_window, "override: L in seconds");
        cmd->add_option("--popular-min-ratings", popular_ratings, "override: n*");
        cmd->add_option("--popular-min-avg", popular_avg, "override: mu*");
        cmd->add_option("--epsilon", epsilon, "override: baseline score epsilon");
    }

    DatasetProfile resolve() const {
        DatasetProfile p;
        if (name == "movielens") p = DatasetProfile::movielens();
        else if (name == "digg") p = DatasetProfile::digg();
        else throw ConfigError("unknown profile: " + name);
        if (rating_min) p.min_rating = *rating_min;
        if (rating_max) p.max_rating = *rating_max;
        if (implicit) p.implicit_rating = *implicit;
        if (critical_window) p.critical_window = *critical_window;
        if (lookback_window) p.lookback_window = *lookback_window;
        if (popular_ratings) p.popular_min_ratings = *popular_ratings;
        if (popular_avg) p.popular_min_avg = *popular_avg;
        if (epsilon) p.baseline_score = *epsilon;
        p.validate();
        return p;
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

TemporalBipartiteGraph load_required_snapshot(const std::string& path) {
    if (path.empty()) throw ConfigError("--snapshot is required");
    return load_snapshot_file(path);
}

// ---------------------------------------------------------------- ingest ---

struct IngestArgs {
    std::string input, format = "movielens", snapshot;
    std::string csv_user = "user", csv_item = "item", csv_rating = "rating",
                csv_timestamp = "timestamp";
    bool lenient = false;
    ProfileFlags profile;
};

int cmd_ingest(const IngestArgs& args) {
    std::ifstream in(args.input, std::ios::binary);
    if (!in) throw ConfigError("cannot open input: " + args.input);
    const DatasetProfile profile = args.profile.resolve();
    const ParseMode mode = args.lenient ? ParseMode::lenient : ParseMode::strict;
    ParseStats pstats;
    std::vector<RatingEvent> events;
    if (args.format == "movielens") {
        events = parse_movielens(in, profile, mode, &pstats);
    } else if (args.format == "konect") {
        events = parse_konect(in, profile, mode, &pstats);
    } else if (args.format == "csv") {
        ColumnMap columns{args.csv_user, args.csv_item, args.csv_rating, args.csv_timestamp};
        events = parse_generic_csv(in, columns, profile, mode, &pstats);
    } else {
        throw ConfigError("unknown format: " + args.format);
    }
    BuildStats bstats;
    TemporalBipartiteGraph graph = build_graph(events, &bstats);
    if (!args.snapshot.empty()) save_snapshot_file(graph, args.snapshot);

    std::int64_t t_min = 0, t_max = 0;
    if (!graph.edges().empty()) {
        t_min = t_max = graph.edges().front().timestamp;
        for (const Edge& e : graph.edges()) {
            t_min = std::min(t_min, e.timestamp);
            t_max = std::max(t_max, e.timestamp);
        }
    }
    std::cout << "primary=" << graph.primary_count() << "\n"
              << "secondary=" << graph.secondary_count() << "\n"
              << "edges=" << graph.edge_count() << "\n"
              << "events=" << pstats.data_lines - pstats.skipped << "\n"
              << "skipped=" << pstats.skipped << "\n"
              << "duplicates=" << bstats.duplicates << "\n"
              << "t_min=" << t_min << "\n"
              << "t_max=" << t_max << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- motifs ---

struct MotifArgs {
    std::string snapshot, out, per_user_out;
    unsigned workers = 1;
    std::uint64_t budget = 200'000'000;
};

int cmd_motifs(const MotifArgs& args) {
    TemporalBipartiteGraph graph = load_required_snapshot(args.snapshot);
    MotifOptions options{args.workers, args.budget};
    MotifResult result = count_motifs(graph, options);
    ClusteringProfile profile = icc_from_counts(result.global);
    const double cstar = opsahl_cstar(graph);

    auto counts_csv = [](const MotifCounts& c, const ClusteringProfile& p) {
        std::ostringstream row;
        for (int k = 0; k < 4; ++k) row << c.sigma[k] << ",";
        for (int k = 0; k < 3; ++k) row << c.kappa[k] << ",";
        for (int k = 0; k < 4; ++k) row << fmt(p.icc[k]) << (k < 3 ? "," : "");
        return row.str();
    };

    std::ostringstream global;
    global << "sigma0,sigma1,sigma2,sigma3,kappa0,kappa1,kappa2,icc0,icc1,icc2,icc3,cstar\n"
           << counts_csv(result.global, profile) << "," << fmt(cstar) << "\n";
    if (args.out.empty()) std::cout << global.str();
    else open_out(args.out) << global.str();

    if (!args.per_user_out.empty()) {
        auto out = open_out(args.per_user_out);
        out << "user_id,sigma0,sigma1,sigma2,sigma3,kappa0,kappa1,kappa2,icc0,icc1,icc2,icc3\n";
        for (std::uint32_t u = 0; u < graph.primary_count(); ++u)
            out << graph.primary_ids()[u] << ","
                << counts_csv(result.per_primary[u], icc_from_counts(result.per_primary[u]))
                << "\n";
    }
    return kExitOk;
}

// --------------------------------------------------------------- predict ---

struct PredictArgs {
    std::string snapshot, out;
    std::vector<std::string> items;
    bool strict = false;
    unsigned workers = 1;
    std::uint64_t budget = 200'000'000;
    ProfileFlags profile;
};

int cmd_predict(const PredictArgs& args) {
    TemporalBipartiteGraph graph = load_required_snapshot(args.snapshot);
    const DatasetProfile profile = args.profile.resolve();
    MotifOptions options{args.workers, args.budget};

    std::ostringstream csv;
    csv << "item_id,ego_id,r,t0,n_hat,mu_hat,rho_hat,error\n";
    for (const std::string& item_id : args.items) {
        auto item = graph.find_secondary(item_id);
        if (!item) {
            if (args.strict) throw DataError("unknown item id: " + item_id);
            csv << item_id << ",,,,,,,unknown item\n";
            continue;
        }
        Prediction pred = predict_item(graph, *item, profile, options);
        csv << item_id << "," << graph.primary_ids()[pred.ego] << "," << fmt(pred.first_rating)
            << "," << pred.anchor_time << "," << fmt(pred.n_hat) << "," << fmt(pred.mu_hat) << ","
            << fmt(pred.rho_hat) << ",\n";
    }
    if (args.out.empty()) std::cout << csv.str();
    else open_out(args.out) << csv.str();
    return kExitOk;
}

// -------------------------------------------------------------- evaluate ---

struct EvaluateArgs {
    std::string snapshot, out;
    std::optional<std::int64_t> from, to;
    double rho_tol = 0.05;
    double n_band_abs = 5.0;
    double n_band_rel = 0.5;
    bool auto_nstar = false;
    unsigned workers = 1;
    std::uint64_t budget = 200'000'000;
    ProfileFlags profile;
};

EvalReport run_evaluate(const EvaluateArgs& args, const TemporalBipartiteGraph& graph,
                        DatasetProfile& profile) {
    if (args.auto_nstar) {
        const double avg = critical_period_average(graph, profile.critical_window);
        profile.popular_min_ratings =
            std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::llround(avg)));
    }
    EvalConfig config;
    config.rho_tolerance = args.rho_tol;
    config.n_band_abs = args.n_band_abs;
    config.n_band_rel = args.n_band_rel;
    config.workers = args.workers;
    config.motif_budget = args.budget;
    ItemFilter filter;
    if (args.from || args.to)
        filter = first_rating_between(args.from.value_or(std::numeric_limits<std::int64_t>::min()),
                                      args.to.value_or(std::numeric_limits<std::int64_t>::max()));
    return evaluate(graph, filter, profile, config);
}

void write_report_csv(const EvalReport& report, const TemporalBipartiteGraph& graph,
                      std::ostream& out) {
    out << "item_id,n,mu,rho,n_hat,mu_hat,rho_hat,abs_err,pop_success,n_success\n";
    for (const EvalRow& row : report.rows)
        out << graph.secondary_ids()[row.actual.item] << "," << row.actual.n_actual << ","
            << fmt(row.actual.mu_actual) << "," << fmt(row.actual.rho_actual) << ","
            << fmt(row.predicted.n_hat) << "," << fmt(row.predicted.mu_hat) << ","
            << fmt(row.predicted.rho_hat) << "," << fmt(row.abs_err) << ","
            << (row.pop_success ? 1 : 0) << "," << (row.n_success ? 1 : 0) << "\n";
}

void print_report_summary(const EvalReport& report, const DatasetProfile& profile) {
    std::cout << "profile=" << profile.name << "\n"
              << "items=" << report.items << "\n"
              << "pop_successes=" << report.pop_successes << "\n"
              << "pop_success_rate=" << fmt(report.pop_success_rate) << "\n"
              << "n_successes=" << report.n_successes << "\n"
              << "n_success_rate=" << fmt(report.n_success_rate) << "\n"
              << "rho_tolerance=" << fmt(report.config.rho_tolerance) << "\n"
              << "n_band_abs=" << fmt(report.config.n_band_abs) << "\n"
              << "n_band_rel=" << fmt(report.config.n_band_rel) << "\n"
              << "n_star=" << profile.popular_min_ratings << "\n"
              << "mu_star=" << fmt(profile.popular_min_avg) << "\n"
              << "epsilon=" << fmt(profile.baseline_score) << "\n";
}

int cmd_evaluate(const EvaluateArgs& args) {
    TemporalBipartiteGraph graph = load_required_snapshot(args.snapshot);
    DatasetProfile profile = args.profile.resolve();
    EvalReport report = run_evaluate(args, graph, profile);
    if (!args.out.empty()) {
        auto out = open_out(args.out);
        write_report_csv(report, graph, out);
    }
    print_report_summary(report, profile);
    return kExitOk;
}

// -------------------------------------------------------------- plotdata ---

struct PlotArgs {
    std::string snapshot, outdir = ".", kind;
    std::vector<std::string> items;
    EvaluateArgs eval;  // reused for fig4/s6
};

int cmd_plotdata(const PlotArgs& args) {
    TemporalBipartiteGraph graph = load_required_snapshot(args.snapshot);
    DatasetProfile profile = args.eval.profile.resolve();
    std::filesystem::create_directories(args.outdir);
    auto path = [&](const std::string& name) { return args.outdir + "/" + name; };

    auto resolve_items = [&]() {
        std::vector<std::uint32_t> out;
        if (args.items.empty()) {
            for (std::uint32_t i = 0; i < graph.secondary_count(); ++i)
                if (graph.degree(NodeRef::item(i)) > 0) out.push_back(i);
        } else {
            for (const std::string& id : args.items) {
                auto item = graph.find_secondary(id);
                if (!item) throw DataError("unknown item id: " + id);
                out.push_back(*item);
            }
        }
        return out;
    };

    if (args.kind == "fig2") {
        // mu vs n at the end of each item's critical period
        auto out = open_out(path("fig2_mu_vs_n.csv"));
        out << "n,mu\n";
        for (std::uint32_t item : resolve_items()) {
            const ItemOutcome o = actual_outcome(graph, item, profile);
            out << o.n_actual << "," << fmt(o.mu_actual) << "\n";
        }
    } else if (args.kind == "fig4" || args.kind == "s6") {
        EvaluateArgs eval = args.eval;
        eval.snapshot = args.snapshot;
        EvalReport report = run_evaluate(eval, graph, profile);
        if (args.kind == "fig4") {
            auto out = open_out(path("fig4_rho_hat_vs_rho.csv"));
            out << "rho_hat,rho\n";
            for (const EvalRow& row : report.rows)
                out << fmt(row.predicted.rho_hat) << "," << fmt(row.actual.rho_actual) << "\n";
        } else {
            auto out = open_out(path("s6_n_hat_vs_n.csv"));
            out << "n_hat,n\n";
            for (const EvalRow& row : report.rows)
                out << fmt(row.predicted.n_hat) << "," << row.actual.n_actual << "\n";
        }
    } else if (args.kind == "s1" || args.kind == "s2") {
        for (std::uint32_t item : resolve_items()) {
            auto series = decay_profile(graph, item);
            auto out = open_out(path((args.kind == "s1" ? "s1_running_mean_item_"
                                                        : "s2_gaps_item_") +
                                     graph.secondary_ids()[item] + ".csv"));
            if (args.kind == "s1") {
                out << "offset_seconds,running_mean\n";
                for (const DecayPoint& p : series)
                    out << p.offset << "," << fmt(p.running_mean) << "\n";
            } else {
                out << "offset_seconds,gap_seconds\n";
                for (const DecayPoint& p : series)
                    if (p.gap) out << p.offset << "," << *p.gap << "\n";
            }
        }
    } else if (args.kind == "s4" || args.kind == "s5") {
        std::vector<std::int64_t> lookbacks = {profile.lookback_window,
                                               2 * profile.lookback_window,
                                               3 * profile.lookback_window,
                                               4 * profile.lookback_window};
        DiagnosticReport report =
            diagnostic_correlations(graph, resolve_items(), profile, lookbacks);
        if (args.kind == "s4") {
            for (std::size_t li = 0; li < lookbacks.size(); ++li) {
                auto out = open_out(path("s4_ego_degree_lookback_" +
                                         std::to_string(lookbacks[li]) + ".csv"));
                out << "ego_degree,n\n";
                for (const DiagnosticRow& row : report.rows)
                    out << row.ego_degrees[li] << "," << row.n_actual << "\n";
                std::cout << "degree_correlation_" << lookbacks[li] << "="
                          << fmt(report.degree_correlations[li]) << "\n";
            }
        } else {
            auto out = open_out(path("s5_second_neighbours.csv"));
            out << "second_neighbours,n\n";
            for (const DiagnosticRow& row : report.rows)
                out << row.second_neighbours << "," << row.n_actual << "\n";
            std::cout << "second_neighbour_correlation="
                      << fmt(report.second_neighbour_correlation) << "\n";
        }
        std::cout << "mu_vs_n_correlation=" << fmt(report.mu_vs_n_correlation) << "\n";
    } else {
        throw ConfigError("unknown plot kind: " + args.kind);
    }
    return kExitOk;
}

// ----------------------------------------------------------------- synth ---

struct SynthArgs {
    SynthConfig config;
    std::string out;
};

int cmd_synth(const SynthArgs& args) {
    auto events = generate_events(args.config);
    if (args.out.empty()) write_movielens(events, std::cout);
    else {
        auto out = open_out(args.out);
        write_movielens(events, out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipartite rating-network analytics and popularity prediction"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI-style key=value file");
    app.allow_config_extras(CLI::config_extras_mode::error);

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "parse a rating stream into a graph snapshot");
    ingest_cmd->add_option("--input", ingest.input, "input file")->required()
        ->envname("RATENET_INPUT");
    ingest_cmd->add_option("--format", ingest.format, "movielens|konect|csv");
    ingest_cmd->add_option("--snapshot", ingest.snapshot, "snapshot output path")
        ->envname("RATENET_SNAPSHOT");
    ingest_cmd->add_flag("--lenient", ingest.lenient, "skip malformed records instead of aborting");
    ingest_cmd->add_option("--csv-user", ingest.csv_user, "csv: user column name");
    ingest_cmd->add_option("--csv-item", ingest.csv_item, "csv: item column name");
    ingest_cmd->add_option("--csv-rating", ingest.csv_rating, "csv: rating column name");
    ingest_cmd->add_option("--csv-timestamp", ingest.csv_timestamp, "csv: timestamp column name");
    ingest.profile.attach(ingest_cmd);

    MotifArgs motifs;
    auto* motifs_cmd = app.add_subcommand("motifs", "count 6-node motifs and coefficients");
    motifs_cmd->add_option("--snapshot", motifs.snapshot, "graph snapshot")->required()
        ->envname("RATENET_SNAPSHOT");
    motifs_cmd->add_option("--out", motifs.out, "global counts CSV (stdout if omitted)");
    motifs_cmd->add_option("--per-user-out", motifs.per_user_out, "per-user counts CSV");
    motifs_cmd->add_option("--workers", motifs.workers, "worker threads")
        ->envname("RATENET_WORKERS");
    motifs_cmd->add_option("--budget", motifs.budget, "candidate-set budget")
        ->envname("RATENET_BUDGET");

    PredictArgs predict;
    auto* predict_cmd = app.add_subcommand("predict", "predict popularity for given items");
    predict_cmd->add_option("--snapshot", predict.snapshot, "graph snapshot")->required()
        ->envname("RATENET_SNAPSHOT");
    predict_cmd->add_option("items", predict.items, "item ids")->required();
    predict_cmd->add_option("--out", predict.out, "prediction CSV (stdout if omitted)");
    predict_cmd->add_flag("--strict", predict.strict, "unknown item id is a hard error");
    predict_cmd->add_option("--workers", predict.workers, "worker threads");
    predict_cmd->add_option("--budget", predict.budget, "candidate-set budget");
    predict.profile.attach(predict_cmd);

    EvaluateArgs evaluate;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "predict and score all selected items");
    evaluate_cmd->add_option("--snapshot", evaluate.snapshot, "graph snapshot")->required()
        ->envname("RATENET_SNAPSHOT");
    evaluate_cmd->add_option("--out", evaluate.out, "per-item report CSV");
    evaluate_cmd->add_option("--from", evaluate.from, "select items first rated at/after this time");
    evaluate_cmd->add_option("--to", evaluate.to, "select items first rated before this time");
    evaluate_cmd->add_option("--rho-tol", evaluate.rho_tol, "popularity success tolerance");
    evaluate_cmd->add_option("--n-band-abs", evaluate.n_band_abs, "n success: absolute band");
    evaluate_cmd->add_option("--n-band-rel", evaluate.n_band_rel, "n success: relative band");
    evaluate_cmd->add_flag("--auto-nstar", evaluate.auto_nstar,
                           "recompute n* from the data's critical-period average");
    evaluate_cmd->add_option("--workers", evaluate.workers, "worker threads")
        ->envname("RATENET_WORKERS");
    evaluate_cmd->add_option("--budget", evaluate.budget, "candidate-set budget")
        ->envname("RATENET_BUDGET");
    evaluate.profile.attach(evaluate_cmd);

    PlotArgs plot;
    auto* plot_cmd = app.add_subcommand("plotdata", "export plot-ready CSV series");
    plot_cmd->add_option("--snapshot", plot.snapshot, "graph snapshot")->required()
        ->envname("RATENET_SNAPSHOT");
    plot_cmd->add_option("--kind", plot.kind, "fig2|fig4|s1|s2|s4|s5|s6")->required();
    plot_cmd->add_option("--outdir", plot.outdir, "output directory");
    plot_cmd->add_option("--items", plot.items, "restrict to these item ids");
    plot_cmd->add_option("--rho-tol", plot.eval.rho_tol, "popularity success tolerance");
    plot_cmd->add_option("--n-band-abs", plot.eval.n_band_abs, "n success: absolute band");
    plot_cmd->add_option("--n-band-rel", plot.eval.n_band_rel, "n success: relative band");
    plot_cmd->add_option("--workers", plot.eval.workers, "worker threads");
    plot_cmd->add_option("--budget", plot.eval.budget, "candidate-set budget");
    plot.eval.profile.attach(plot_cmd);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic rating stream");
    synth_cmd->add_option("--seed", synth.config.seed, "generator seed")->required();
    synth_cmd->add_option("--users", synth.config.users, "user count");
    synth_cmd->add_option("--items", synth.config.items, "item count");
    synth_cmd->add_option("--start-time", synth.config.start_time, "first possible timestamp");
    synth_cmd->add_option("--release-span", synth.config.release_span,
                          "span of item first-rating times, seconds");
    synth_cmd->add_option("--gap-scale", synth.config.gap_scale, "mean inter-rating gap, seconds");
    synth_cmd->add_option("--mean-ratings", synth.config.mean_ratings_per_item,
                          "mean ratings per item");
    synth_cmd->add_option("--out", synth.out, "output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
        if (*ingest_cmd) return cmd_ingest(ingest);
        if (*motifs_cmd) return cmd_motifs(motifs);
        if (*predict_cmd) return cmd_predict(predict);
        if (*evaluate_cmd) return cmd_evaluate(evaluate);
        if (*plot_cmd) return cmd_plotdata(plot);
        if (*synth_cmd) return cmd_synth(synth);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStrictData;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStrictData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
