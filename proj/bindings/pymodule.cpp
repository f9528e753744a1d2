#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <limits>
#include <sstream>

#include "ratenet/parse.hpp"
#include "ratenet/pipeline.hpp"
#include "ratenet/snapshot.hpp"
#include "ratenet/synth.hpp"

namespace py = pybind11;
using namespace ratenet;

namespace {

std::vector<RatingEvent> parse_events(const std::string& text, const std::string& format,
                                      const DatasetProfile& profile, bool lenient) {
    std::istringstream in(text);
    const ParseMode mode = lenient ? ParseMode::lenient : ParseMode::strict;
    if (format == "movielens") return parse_movielens(in, profile, mode);
    if (format == "konect") return parse_konect(in, profile, mode);
    if (format == "csv") return parse_generic_csv(in, ColumnMap{}, profile, mode);
    throw ConfigError("unknown format: " + format);
}

std::vector<RatingEvent> load_events(const std::string& path, const std::string& format,
                                     const DatasetProfile& profile, bool lenient) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_events(buf.str(), format, profile, lenient);
}

}  // namespace

PYBIND11_MODULE(_ratenet, m) {
    m.doc() = "bipartite rating-network analytics and popularity prediction";

    py::register_exception<BudgetExceededError>(m, "BudgetExceededError");
    py::register_exception<DataError>(m, "DataError");
    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<ParseError>(m, "ParseError");

    py::class_<RatingEvent>(m, "RatingEvent")
        .def(py::init<>())
        .def(py::init([](std::string user, std::string item, double rating, std::int64_t t) {
                 return RatingEvent{std::move(user), std::move(item), rating, t};
             }),
             py::arg("user_id"), py::arg("item_id"), py::arg("rating"), py::arg("timestamp"))
        .def_readwrite("user_id", &RatingEvent::user_id)
        .def_readwrite("item_id", &RatingEvent::item_id)
        .def_readwrite("rating", &RatingEvent::rating)
        .def_readwrite("timestamp", &RatingEvent::timestamp)
        .def("__eq__", [](const RatingEvent& a, const RatingEvent& b) {
            return a.user_id == b.user_id && a.item_id == b.item_id && a.rating == b.rating &&
                   a.timestamp == b.timestamp;
        });

    py::class_<DatasetProfile>(m, "DatasetProfile")
        .def(py::init<>())
        .def_static("movielens", &DatasetProfile::movielens)
        .def_static("digg", &DatasetProfile::digg)
        .def_readwrite("name", &DatasetProfile::name)
        .def_readwrite("min_rating", &DatasetProfile::min_rating)
        .def_readwrite("max_rating", &DatasetProfile::max_rating)
        .def_readwrite("implicit_rating", &DatasetProfile::implicit_rating)
        .def_readwrite("critical_window", &DatasetProfile::critical_window)
        .def_readwrite("lookback_window", &DatasetProfile::lookback_window)
        .def_readwrite("popular_min_ratings", &DatasetProfile::popular_min_ratings)
        .def_readwrite("popular_min_avg", &DatasetProfile::popular_min_avg)
        .def_readwrite("baseline_score", &DatasetProfile::baseline_score);

    py::class_<TimeWindow>(m, "TimeWindow")
        .def(py::init([](std::int64_t start, std::int64_t end) {
                 return TimeWindow{start, end};
             }),
             py::arg("start"), py::arg("end"))
        .def_readwrite("start", &TimeWindow::start)
        .def_readwrite("end", &TimeWindow::end);

    py::enum_<Side>(m, "Side").value("primary", Side::primary).value("secondary", Side::secondary);

    py::class_<NodeRef>(m, "NodeRef")
        .def_static("user", &NodeRef::user)
        .def_static("item", &NodeRef::item)
        .def_readonly("side", &NodeRef::side)
        .def_readonly("index", &NodeRef::index);

    py::class_<TemporalBipartiteGraph>(m, "TemporalBipartiteGraph")
        .def_property_readonly("primary_count", &TemporalBipartiteGraph::primary_count)
        .def_property_readonly("secondary_count", &TemporalBipartiteGraph::secondary_count)
        .def_property_readonly("edge_count", &TemporalBipartiteGraph::edge_count)
        .def("primary_ids", &TemporalBipartiteGraph::primary_ids)
        .def("secondary_ids", &TemporalBipartiteGraph::secondary_ids)
        .def("find_primary", &TemporalBipartiteGraph::find_primary)
        .def("find_secondary", &TemporalBipartiteGraph::find_secondary)
        .def("degree", &TemporalBipartiteGraph::degree)
        .def("neighbors",
             [](const TemporalBipartiteGraph& g, NodeRef node) {
                 auto nb = g.neighbors(node);
                 return std::vector<std::uint32_t>(nb.begin(), nb.end());
             })
        .def("windowed_view", &TemporalBipartiteGraph::windowed_view)
        .def("first_rating",
             [](const TemporalBipartiteGraph& g, std::uint32_t item) {
                 const FirstRating f = g.first_rating(item);
                 return py::make_tuple(f.user, f.rating, f.timestamp);
             })
        .def("bounded_bfs",
             [](const TemporalBipartiteGraph& g, NodeRef root, std::uint32_t depth) {
                 std::vector<std::pair<NodeRef, std::uint32_t>> out = g.bounded_bfs(root, depth);
                 return out;
             })
        .def("item_window_stats", &TemporalBipartiteGraph::item_window_stats)
        .def("structurally_equal", &TemporalBipartiteGraph::structurally_equal);

    m.def("parse_events", &parse_events, py::arg("text"), py::arg("format"), py::arg("profile"),
          py::arg("lenient") = false);
    m.def("load_events", &load_events, py::arg("path"), py::arg("format"), py::arg("profile"),
          py::arg("lenient") = false);
    m.def(
        "build_graph",
        [](const std::vector<RatingEvent>& events) {
            BuildStats stats;
            auto graph = build_graph(events, &stats);
            return py::make_tuple(std::move(graph), stats.duplicates);
        },
        py::arg("events"), "returns (graph, duplicate_count)");
    m.def("save_snapshot", &save_snapshot_file, py::arg("graph"), py::arg("path"));
    m.def("load_snapshot", &load_snapshot_file, py::arg("path"));

    py::enum_<MotifClass>(m, "MotifClass")
        .value("Sigma0", MotifClass::Sigma0)
        .value("Sigma1", MotifClass::Sigma1)
        .value("Sigma2", MotifClass::Sigma2)
        .value("Sigma3", MotifClass::Sigma3)
        .value("Kappa0", MotifClass::Kappa0)
        .value("Kappa1", MotifClass::Kappa1)
        .value("Kappa2", MotifClass::Kappa2)
        .value("NONE", MotifClass::None);

    py::class_<MotifCounts>(m, "MotifCounts")
        .def(py::init<>())
        .def_readwrite("sigma", &MotifCounts::sigma)
        .def_readwrite("kappa", &MotifCounts::kappa)
        .def("__eq__", [](const MotifCounts& a, const MotifCounts& b) { return a == b; });

    py::class_<ClusteringProfile>(m, "ClusteringProfile")
        .def(py::init<>())
        .def_readwrite("icc", &ClusteringProfile::icc);

    py::class_<MotifResult>(m, "MotifResult")
        .def_readonly("global_counts", &MotifResult::global)
        .def_readonly("per_primary", &MotifResult::per_primary);

    m.def("classify_subset", &classify_subset, py::arg("graph"), py::arg("users"),
          py::arg("items"));
    m.def(
        "count_motifs",
        [](const TemporalBipartiteGraph& g, unsigned workers, std::uint64_t budget) {
            return count_motifs(g, {workers, budget});
        },
        py::arg("graph"), py::arg("workers") = 1, py::arg("budget") = 200'000'000ull);
    m.def("icc_from_counts", &icc_from_counts);
    m.def("opsahl_cstar", &opsahl_cstar);

    py::class_<EgoNetwork>(m, "EgoNetwork")
        .def_readonly("graph", &EgoNetwork::graph)
        .def_readonly("ego", &EgoNetwork::ego)
        .def_readonly("original_ego", &EgoNetwork::original_ego)
        .def_readonly("anchor_time", &EgoNetwork::anchor_time)
        .def_readonly("first_rating", &EgoNetwork::first_rating);

    py::class_<EgoStats>(m, "EgoStats")
        .def_readonly("size", &EgoStats::size)
        .def_readonly("mean_degree", &EgoStats::mean_degree)
        .def_readonly("density", &EgoStats::density);

    m.def("extract_ego_network", &extract_ego_network, py::arg("graph"), py::arg("item"),
          py::arg("profile"));
    m.def("ego_stats", &ego_stats);

    py::class_<LogisticParams>(m, "LogisticParams")
        .def(py::init([](double c, double k) { return LogisticParams{c, k}; }), py::arg("c"),
             py::arg("k"))
        .def_readwrite("c", &LogisticParams::c)
        .def_readwrite("k", &LogisticParams::k);

    py::class_<DeltaProfile>(m, "DeltaProfile")
        .def(py::init<>())
        .def_readwrite("delta", &DeltaProfile::delta)
        .def_readwrite("below_mean", &DeltaProfile::below_mean);

    py::class_<Prediction>(m, "Prediction")
        .def_readonly("item", &Prediction::item)
        .def_readonly("ego", &Prediction::ego)
        .def_readonly("first_rating", &Prediction::first_rating)
        .def_readonly("anchor_time", &Prediction::anchor_time)
        .def_readonly("n_hat", &Prediction::n_hat)
        .def_readonly("mu_hat", &Prediction::mu_hat)
        .def_readonly("rho_hat", &Prediction::rho_hat);

    m.def("calibrate_rho", &calibrate_rho, py::arg("mu_star"), py::arg("n_star"),
          py::arg("epsilon") = 5e-4);
    m.def("rho", &rho, py::arg("mu"), py::arg("n"), py::arg("params"));
    m.def("calibrate_f", &calibrate_f, py::arg("n_star"), py::arg("epsilon") = 5e-4);
    m.def("rating_response", &rating_response, py::arg("n"), py::arg("params"));
    m.def(
        "delta_profile",
        [](const ClusteringProfile& ego, const std::vector<ClusteringProfile>& population) {
            return delta_profile(ego, population);
        },
        py::arg("ego"), py::arg("population"));
    m.def("predict_n", &predict_n, py::arg("r"), py::arg("deltas"));
    m.def("predict_mu", &predict_mu, py::arg("n_hat"), py::arg("r"), py::arg("f_params"),
          py::arg("profile"));

    py::class_<ItemOutcome>(m, "ItemOutcome")
        .def_readonly("item", &ItemOutcome::item)
        .def_readonly("t0", &ItemOutcome::t0)
        .def_readonly("n_actual", &ItemOutcome::n_actual)
        .def_readonly("mu_actual", &ItemOutcome::mu_actual)
        .def_readonly("rho_actual", &ItemOutcome::rho_actual);

    py::class_<EvalRow>(m, "EvalRow")
        .def_readonly("actual", &EvalRow::actual)
        .def_readonly("predicted", &EvalRow::predicted)
        .def_readonly("abs_err", &EvalRow::abs_err)
        .def_readonly("pop_success", &EvalRow::pop_success)
        .def_readonly("n_success", &EvalRow::n_success);

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("rows", &EvalReport::rows)
        .def_readonly("items", &EvalReport::items)
        .def_readonly("pop_successes", &EvalReport::pop_successes)
        .def_readonly("n_successes", &EvalReport::n_successes)
        .def_readonly("pop_success_rate", &EvalReport::pop_success_rate)
        .def_readonly("n_success_rate", &EvalReport::n_success_rate);

    m.def("critical_period_average", &critical_period_average, py::arg("graph"),
          py::arg("window"));
    m.def("actual_outcome", &actual_outcome, py::arg("graph"), py::arg("item"),
          py::arg("profile"));
    m.def(
        "predict_item",
        [](const TemporalBipartiteGraph& g, std::uint32_t item, const DatasetProfile& profile,
           unsigned workers, std::uint64_t budget) {
            return predict_item(g, item, profile, {workers, budget});
        },
        py::arg("graph"), py::arg("item"), py::arg("profile"), py::arg("workers") = 1,
        py::arg("budget") = 200'000'000ull);
    m.def(
        "evaluate",
        [](const TemporalBipartiteGraph& g, const DatasetProfile& profile, double rho_tol,
           double n_band_abs, double n_band_rel, unsigned workers, std::uint64_t budget,
           std::optional<std::int64_t> from, std::optional<std::int64_t> to) {
            EvalConfig config;
            config.rho_tolerance = rho_tol;
            config.n_band_abs = n_band_abs;
            config.n_band_rel = n_band_rel;
            config.workers = workers;
            config.motif_budget = budget;
            ItemFilter filter;
            if (from || to)
                filter = first_rating_between(
                    from.value_or(std::numeric_limits<std::int64_t>::min()),
                    to.value_or(std::numeric_limits<std::int64_t>::max()));
            return evaluate(g, filter, profile, config);
        },
        py::arg("graph"), py::arg("profile"), py::arg("rho_tol") = 0.05,
        py::arg("n_band_abs") = 5.0, py::arg("n_band_rel") = 0.5, py::arg("workers") = 1,
        py::arg("budget") = 200'000'000ull, py::arg("from_time") = std::nullopt,
        py::arg("to_time") = std::nullopt);

    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_readwrite("seed", &SynthConfig::seed)
        .def_readwrite("users", &SynthConfig::users)
        .def_readwrite("items", &SynthConfig::items)
        .def_readwrite("start_time", &SynthConfig::start_time)
        .def_readwrite("release_span", &SynthConfig::release_span)
        .def_readwrite("gap_scale", &SynthConfig::gap_scale)
        .def_readwrite("mean_ratings_per_item", &SynthConfig::mean_ratings_per_item);

    m.def("generate_events", &generate_events, py::arg("config"));
    m.def(
        "write_movielens",
        [](const std::vector<RatingEvent>& events, const std::string& path) {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw ConfigError("cannot open output: " + path);
            write_movielens(events, out);
        },
        py::arg("events"), py::arg("path"));
}
