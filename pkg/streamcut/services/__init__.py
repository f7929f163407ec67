# Services
from .graph_service import (
    canonicalize_edge, make_event, build_final_graph, brute_force_maxcut,
    gen_planted_bipartite, gen_hub_instance, gen_random_instance,
    shuffle_to_random_order, gen_dynamic_stream, high_degree_threshold, m_lower_bound, local_search_cut
)
from .stream_io import format_stream, parse_stream, read_stream, write_stream, read_instance, write_instance
from .oracle_service import NoisyOracle, EdgeAnnotatedOracle, make_oracle
from .estimator_service import (
    alg1_run, greedy_extension, offline_best_of_two, estimate_sum_by_sampling,
    small_m_fallback, median_of_runs
)
from .random_order_service import RandomOrderEstimator, ConstantQueryEstimator, alg2_run, alg2_constant_query_run
from .sketch_service import ArbitraryOrderEstimator, DynamicEstimator, alg3_run, alg4_run
from .harness_service import (
    ExperimentService, run_experiment, compute_target_ratio, generate_instance, run_estimator, write_report
)

__all__ = [
    "canonicalize_edge", "make_event", "build_final_graph", "brute_force_maxcut",
    "gen_planted_bipartite", "gen_hub_instance", "gen_random_instance",
    "shuffle_to_random_order", "gen_dynamic_stream", "high_degree_threshold", "m_lower_bound", "local_search_cut",
    "format_stream", "parse_stream", "read_stream", "write_stream", "read_instance", "write_instance",
    "NoisyOracle", "EdgeAnnotatedOracle", "make_oracle",
    "alg1_run", "greedy_extension", "offline_best_of_two", "estimate_sum_by_sampling",
    "small_m_fallback", "median_of_runs",
    "RandomOrderEstimator", "ConstantQueryEstimator", "alg2_run", "alg2_constant_query_run",
    "ArbitraryOrderEstimator", "DynamicEstimator", "alg3_run", "alg4_run",
    "ExperimentService", "run_experiment", "compute_target_ratio", "generate_instance",
    "run_estimator", "write_report",
]
