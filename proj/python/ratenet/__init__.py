"""Bipartite rating-network motif analytics and popularity prediction."""

from ratenet._ratenet import (  # noqa: F401
    BudgetExceededError,
    ClusteringProfile,
    ConfigError,
    DataError,
    DatasetProfile,
    DeltaProfile,
    EgoNetwork,
    EgoStats,
    EvalReport,
    EvalRow,
    ItemOutcome,
    LogisticParams,
    MotifClass,
    MotifCounts,
    MotifResult,
    NodeRef,
    ParseError,
    Prediction,
    RatingEvent,
    Side,
    SynthConfig,
    TemporalBipartiteGraph,
    TimeWindow,
    actual_outcome,
    build_graph,
    calibrate_f,
    calibrate_rho,
    classify_subset,
    count_motifs,
    critical_period_average,
    delta_profile,
    ego_stats,
    evaluate,
    extract_ego_network,
    generate_events,
    icc_from_counts,
    load_events,
    load_snapshot,
    opsahl_cstar,
    parse_events,
    predict_item,
    predict_mu,
    predict_n,
    rating_response,
    rho,
    save_snapshot,
    write_movielens,
)

__all__ = [name for name in dir() if not name.startswith("_")]
