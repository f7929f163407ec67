import numpy as np
import pytest
from hypothesis import given, strategies as st

from streamcut.core.errors import DomainError, StreamKindError
from streamcut.schemas import CutChoice, EstimatorParams, GreedyMode, Graph, StreamKind, SumEstimatorConfig
from streamcut.services import (
    NoisyOracle, alg1_run, build_final_graph, brute_force_maxcut, estimate_sum_by_sampling,
    gen_planted_bipartite, gen_random_instance, greedy_extension, median_of_runs,
    offline_best_of_two, small_m_fallback,
)
from streamcut.services.harness_service import compute_target_ratio
from streamcut.schemas import TargetMode


def random_cases(count, n_range=(4, 14), seed=0):
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(*n_range, endpoint=True))
        m = int(rng.integers(1, n * (n - 1) // 2, endpoint=True))
        yield gen_random_instance(n, m, rng_seed=seed * 1000 + i)


def test_alg1_trivial_streams(stream_of, perfect_oracle):
    assert alg1_run(stream_of(3, []), perfect_oracle([1, 1, 1])) == 0
    path = stream_of(3, [(0, 1), (1, 2)])
    assert alg1_run(path, perfect_oracle([1, -1, 1])) == 2


def test_alg1_rejects_dynamic_stream(stream_of, perfect_oracle):
    with pytest.raises(StreamKindError):
        alg1_run(stream_of(2, [(0, 1)], StreamKind.DYNAMIC), perfect_oracle([1, -1]))


def test_alg1_exact_with_perfect_predictions():
    for instance in random_cases(100, seed=1):
        oracle = NoisyOracle(instance.opt_assignment, 0.5, rng_seed=0)
        x = alg1_run(instance.stream, oracle)
        assert x == instance.opt_value
        assert x <= len(instance.stream)


@pytest.mark.slow
@pytest.mark.parametrize("eps", [0.1, 0.25, 0.4])
def test_alg1_expectation_on_planted_instance(eps):
    instance = gen_planted_bipartite(500, 500, 10_000, rng_seed=31)
    graph = build_final_graph(instance.stream)
    m = graph.m
    spread = sum(d * (d - 1) for d in graph.degrees())
    variance = (0.25 - 4 * eps ** 4) * m + (eps ** 2 - 4 * eps ** 4) * spread
    seeds = 100
    values = [alg1_run(instance.stream, NoisyOracle(instance.opt_assignment, eps, rng_seed=s)) for s in range(seeds)]
    expected = (0.5 + 2 * eps ** 2) * m
    assert abs(np.mean(values) - expected) <= 4 * np.sqrt(variance / seeds)


def test_greedy_extension_examples():
    assert greedy_extension(5, [(3, 1), (0, 2)]) == 10
    assert greedy_extension(7, []) == 7
    assert greedy_extension(1, [(4, 4)], with_assignment=True) == (5, [1])
    assert greedy_extension(0, [(1, 3), (3, 1)], with_assignment=True) == (6, [-1, 1])


@given(st.integers(0, 1000), st.lists(st.tuples(st.integers(0, 100), st.integers(0, 100)), max_size=20))
def test_greedy_extension_dominates_half_sum(base, hubs):
    value = greedy_extension(base, hubs)
    assert 2 * value >= 2 * base + sum(a + b for a, b in hubs)


def test_offline_star_with_perfect_predictions(params):
    n = 12
    graph = Graph(n=n + 1, edges=frozenset((0, leaf) for leaf in range(1, n + 1)))
    oracle = NoisyOracle([1] + [-1] * n, 0.5, rng_seed=0)
    result = offline_best_of_two(graph, oracle, params())
    assert result.value == n


def test_offline_equals_opt_when_every_vertex_is_low_degree(params):
    k = 400
    edges = {(i, k + i) for i in range(k)} | {(i, k + (i + 1) % k) for i in range(k)}
    graph = Graph(n=2 * k, edges=frozenset(edges))
    p = params(delta=0.9)
    assert max(graph.degrees()) < p.threshold(graph.m)
    oracle = NoisyOracle([1] * k + [-1] * k, 0.5, rng_seed=0)
    result = offline_best_of_two(graph, oracle, p)
    assert result.high_degree == []
    assert result.value == graph.m


def test_offline_assignment_realizes_reported_value():
    for instance in random_cases(30, seed=2):
        graph = build_final_graph(instance.stream)
        oracle = NoisyOracle(instance.opt_assignment, 0.3, rng_seed=5)
        result = offline_best_of_two(graph, oracle, EstimatorParams(eps=0.3, delta=0.2))
        assert graph.cut_value(result.assignment) == result.value
        assert result.value == max(result.greedy_value, result.h_vs_l_value)
        assert result.which is (CutChoice.GREEDY if result.greedy_value >= result.h_vs_l_value else CutChoice.H_VS_L)


def test_offline_sequential_greedy_dominates_static():
    instance = gen_planted_bipartite(300, 300, 6000, rng_seed=4)
    graph = build_final_graph(instance.stream)
    p = EstimatorParams(eps=0.3, delta=0.9)
    sequential = offline_best_of_two(graph, NoisyOracle(instance.opt_assignment, 0.3, 1), p)
    static = offline_best_of_two(graph, NoisyOracle(instance.opt_assignment, 0.3, 1), p, greedy=GreedyMode.STATIC)
    assert sequential.high_degree
    assert sequential.greedy_value == sequential.sequential_greedy_value
    assert sequential.greedy_value >= sequential.static_greedy_value
    assert static.greedy_value == static.static_greedy_value
    assert static.sequential_greedy_value == sequential.sequential_greedy_value
    assert static.static_greedy_value == sequential.static_greedy_value
    assert static.value == max(static.static_greedy_value, static.h_vs_l_value)


def test_offline_meets_target_with_perfect_predictions():
    target = compute_target_ratio(0.5, TargetMode.BEST_OF_TWO)
    for instance in random_cases(100, seed=3):
        graph = build_final_graph(instance.stream)
        oracle = NoisyOracle(instance.opt_assignment, 0.5, rng_seed=0)
        result = offline_best_of_two(graph, oracle, EstimatorParams(eps=0.5, delta=0.2))
        assert result.value >= target * instance.opt_value


@pytest.mark.parametrize("eps", [0.3, 0.5])
def test_offline_success_frequency(eps):
    target = compute_target_ratio(eps, TargetMode.BEST_OF_TWO)
    p = EstimatorParams(eps=eps, delta=0.2)
    hits = 0
    for i, instance in enumerate(random_cases(200, n_range=(12, 12), seed=4)):
        oracle = NoisyOracle(instance.opt_assignment, eps, rng_seed=i)
        hits += offline_best_of_two(build_final_graph(instance.stream), oracle, p).value >= target * instance.opt_value
    assert hits / 200 >= 1 - p.delta


def test_sum_estimator_exact_cases():
    cfg = SumEstimatorConfig(eta=0.1, delta=0.1)
    rng = np.random.default_rng(0)
    assert estimate_sum_by_sampling([0.25] * 40, cfg, rng) == pytest.approx(10.0)
    assert estimate_sum_by_sampling([0.7], cfg, rng) == pytest.approx(0.7)
    with pytest.raises(DomainError):
        estimate_sum_by_sampling([], cfg, rng)


def test_sum_estimator_sample_size():
    cfg = SumEstimatorConfig(eta=0.05, delta=0.05)
    assert cfg.t == int(np.ceil(2 * 0.05 ** -2 * np.log(1 / 0.05)))
    with pytest.raises(ValueError):
        SumEstimatorConfig(eta=0.1, delta=0.1, a=1.0, b=1.0)


def test_sum_estimator_additive_error():
    n, eta = 10_000, 0.05
    cfg = SumEstimatorConfig(eta=eta, delta=0.05)
    rng = np.random.default_rng(42)
    values = (rng.random(n) < 0.37).astype(np.int64)
    exact = values.sum()
    good = sum(abs(estimate_sum_by_sampling(values, cfg, rng) - exact) <= eta * n for _ in range(1000))
    assert good >= 950


def test_small_m_fallback_triangle(stream_of, params):
    triangle = stream_of(3, [(0, 1), (1, 2), (0, 2)])
    result = small_m_fallback(triangle, params())
    assert result.exact and result.value == 2
    assert not small_m_fallback(triangle, params(), threshold=3).exact


def test_small_m_fallback_matches_brute_force(params):
    instance = gen_random_instance(8, 10, rng_seed=12)
    result = small_m_fallback(instance.stream, params())
    assert result.exact
    assert result.value == brute_force_maxcut(build_final_graph(instance.stream))[0]


def test_small_m_fallback_passes_through_large_n(stream_of, params):
    result = small_m_fallback(stream_of(40, [(0, 39), (1, 2)]), params())
    assert not result.exact
    assert "n_exact" in result.diagnostic


def test_median_of_runs():
    assert median_of_runs(lambda seed: 42, 1, master_seed=0) == 42
    values = iter([3, 9, 5])
    assert median_of_runs(lambda seed: next(values), 3, master_seed=0) == 5
    with pytest.raises(DomainError):
        median_of_runs(lambda seed: 0, 2, master_seed=0)


def test_median_of_runs_uses_distinct_seeds():
    seen = []
    median_of_runs(lambda seed: seen.append(seed) or 0, 5, master_seed=7)
    assert len(set(seen)) == 5


def test_offline_report_is_not_marked_exact():
    from streamcut.services.estimator_service import offline_report

    instance = gen_planted_bipartite(30, 30, 200, rng_seed=2)
    report = offline_report(instance.stream, NoisyOracle(instance.opt_assignment, 0.3, 4), EstimatorParams(eps=0.3, delta=0.5))
    assert report.exact is False
    assert report.alg1_value == report.params["sequential_greedy"]
    assert report.estimate == max(report.alg1_value, report.alg2_value)
