import pytest

from streamcut.core.errors import OracleAccessError, StreamKindError
from streamcut.schemas import EstimatorParams, GreedyMode
from streamcut.services import (
    NoisyOracle, alg2_constant_query_run, alg2_run, build_final_graph, gen_hub_instance,
    gen_planted_bipartite, make_oracle, offline_best_of_two, shuffle_to_random_order,
)


def random_order(instance, seed=1):
    return shuffle_to_random_order(instance.stream, seed)


@pytest.fixture(scope="module")
def hub_instance():
    # один хаб степени 2000 и низкостепенная двудольная основа
    return gen_hub_instance(7000, 7000, 1, 2000, rng_seed=21)


def test_alg2_requires_random_order(stream_of, perfect_oracle, params):
    with pytest.raises(StreamKindError):
        alg2_run(stream_of(2, [(0, 1)]), perfect_oracle([1, -1]), params())
    with pytest.raises(StreamKindError):
        alg2_constant_query_run(stream_of(2, [(0, 1)]), perfect_oracle([1, -1]), params())


def test_alg2_short_stream_matches_offline():
    instance = gen_hub_instance(600, 1500, 2, 100, rng_seed=6)
    stream = random_order(instance)
    p = EstimatorParams(eps=0.3, delta=0.9, sample_size_override=10_000)
    report = alg2_run(stream, NoisyOracle(instance.opt_assignment, 0.3, rng_seed=8), p)
    graph = build_final_graph(stream)
    offline = offline_best_of_two(
        graph, NoisyOracle(instance.opt_assignment, 0.3, rng_seed=8), p, greedy=GreedyMode.STATIC
    )
    assert report.h_tilde_size == sum(1 for d in graph.degrees() if d)
    assert report.alg1_value == offline.static_greedy_value
    assert report.alg2_value == offline.h_vs_l_value
    assert report.estimate == offline.value


def test_alg2_low_degree_planted_instance_is_exact():
    instance = gen_planted_bipartite(3500, 3500, 7000, rng_seed=2)
    p = EstimatorParams(eps=0.5, delta=0.9, sample_size_override=200)
    report = alg2_run(random_order(instance), NoisyOracle(instance.opt_assignment, 0.5, 0), p)
    assert report.hubs == []
    assert report.estimate == report.alg1_value == instance.opt_value


def test_alg2_single_hub_with_perfect_predictions(hub_instance):
    p = EstimatorParams(eps=0.5, delta=0.9, sample_size_override=200)
    report = alg2_run(random_order(hub_instance), NoisyOracle(hub_instance.opt_assignment, 0.5, 0), p)
    assert [h.vertex for h in report.hubs] == [0]
    assert report.alg1_value == hub_instance.opt_value == 9000
    assert report.alg2_value == 2000
    hub = report.hubs[0]
    assert hub.f_plus + hub.f_minus == 2000


def test_alg2_matches_offline_when_candidates_cover_hubs(hub_instance):
    stream = random_order(hub_instance, seed=3)
    p = EstimatorParams(eps=0.45, delta=0.9, sample_size_override=200)
    report = alg2_run(stream, NoisyOracle(hub_instance.opt_assignment, 0.45, rng_seed=4), p)
    offline = offline_best_of_two(
        build_final_graph(stream), NoisyOracle(hub_instance.opt_assignment, 0.45, rng_seed=4), p,
        greedy=GreedyMode.STATIC,
    )
    assert set(offline.high_degree) <= set(report.h_tilde)
    assert report.alg1_value == offline.static_greedy_value
    assert report.alg2_value == offline.h_vs_l_value


def test_alg2_respects_edge_annotated_access(hub_instance):
    p = EstimatorParams(eps=0.4, delta=0.5, sample_size_override=100, edge_annotated=True)
    oracle = make_oracle(hub_instance.opt_assignment, p, 1)
    report = alg2_run(random_order(hub_instance), oracle, p)
    assert report.estimate > 0
    degrees = build_final_graph(hub_instance.stream).degrees()
    isolated = degrees.index(0)
    with pytest.raises(OracleAccessError):
        oracle.query(isolated)


def test_constant_query_exhaustive_samples_match_alg2(hub_instance):
    stream = random_order(hub_instance, seed=5)
    p = EstimatorParams(eps=0.5, delta=0.5, sample_size_override=100, query_sample_override=10 ** 6)
    exact = alg2_run(stream, NoisyOracle(hub_instance.opt_assignment, 0.5, 2), p)
    sampled = alg2_constant_query_run(stream, NoisyOracle(hub_instance.opt_assignment, 0.5, 2), p, seed=3)
    assert sampled.alg1_value == exact.alg1_value
    assert sampled.alg2_value == exact.alg2_value
    assert sampled.estimate == exact.estimate


def test_constant_query_noisy_labels_exhaustive(hub_instance):
    stream = random_order(hub_instance, seed=6)
    p = EstimatorParams(eps=0.2, delta=0.5, sample_size_override=150, query_sample_override=10 ** 6)
    exact = alg2_run(stream, NoisyOracle(hub_instance.opt_assignment, 0.2, 9), p)
    sampled = alg2_constant_query_run(stream, NoisyOracle(hub_instance.opt_assignment, 0.2, 9), p, seed=1)
    assert sampled.alg1_value == exact.alg1_value
    assert sampled.alg2_value == exact.alg2_value


def test_constant_query_count_does_not_grow_with_n():
    p = EstimatorParams(eps=0.5, delta=0.5, sample_size_override=50, query_sample_override=100)
    budget = 2 * 50 + 2 * 100 + 2 * 50 * 100
    queries = {}
    plain = {}
    for n in (1000, 10_000):
        instance = gen_planted_bipartite(n // 2, n // 2, 5000, rng_seed=n)
        stream = random_order(instance)
        report = alg2_constant_query_run(stream, NoisyOracle(instance.opt_assignment, 0.5, 1), p, seed=2)
        queries[n] = report.oracle_queries
        assert report.params["query_budget"] <= budget
        assert report.oracle_queries <= report.params["query_budget"]
        plain[n] = alg2_run(stream, NoisyOracle(instance.opt_assignment, 0.5, 1), p).oracle_queries
    assert max(queries.values()) <= budget
    assert plain[10_000] > max(queries.values())


@pytest.fixture(scope="module")
def small_hub_stream():
    instance = gen_hub_instance(2000, 4000, 2, 400, rng_seed=13)
    return instance, random_order(instance, seed=2)


@pytest.mark.slow
def test_constant_query_additive_error_with_explicit_eta(small_hub_stream):
    instance, stream = small_hub_stream
    eta = 0.05
    p = EstimatorParams(eps=0.3, delta=0.2, sample_size_override=100, eta=eta)
    m = len(stream)
    for trial in range(1000):
        exact = alg2_run(stream, NoisyOracle(instance.opt_assignment, 0.3, trial), p)
        sampled = alg2_constant_query_run(stream, NoisyOracle(instance.opt_assignment, 0.3, trial), p, seed=trial)
        assert abs(sampled.alg1_value - exact.alg1_value) <= eta * m
        assert sampled.alg2_value == exact.alg2_value


@pytest.mark.slow
def test_constant_query_additive_error_default_eta(small_hub_stream):
    instance, stream = small_hub_stream
    eps, delta = 0.3, 0.2
    p = EstimatorParams(eps=eps, delta=delta, sample_size_override=100)
    tolerance = eps ** 2 / 64 * len(stream)
    within = 0
    for trial in range(1000):
        exact = alg2_run(stream, NoisyOracle(instance.opt_assignment, eps, trial), p)
        sampled = alg2_constant_query_run(stream, NoisyOracle(instance.opt_assignment, eps, trial), p, seed=trial)
        assert sampled.params["eta"] == pytest.approx(eps ** 2 / 64)
        within += abs(sampled.alg1_value - exact.alg1_value) <= tolerance
    assert within / 1000 >= 1 - delta
