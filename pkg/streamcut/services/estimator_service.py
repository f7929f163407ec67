import logging
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import settings
from ..core.errors import DomainError, StreamKindError
from ..core.seeding import SeedRole, derive_seed
from ..schemas.estimator import (
    CutChoice, EstimateReport, EstimatorParams, FallbackResult, GreedyMode,
    OfflineResult, SumEstimatorConfig,
)
from ..schemas.experiment import Algorithm
from ..schemas.graph import Graph, GraphStream
from .graph_service import brute_force_maxcut, build_final_graph, m_lower_bound
from .oracle_service import Oracle

logger = logging.getLogger(__name__)

Number = Union[int, float]


def alg1_run(stream: GraphStream, oracle: Oracle) -> int:
    """Число рёбер, чьи концы получили разные предсказанные метки"""
    if not stream.kind.is_insertion_only:
        raise StreamKindError("alg1 работает только с insertion-only потоками")
    crossing = 0
    for event in stream.events:
        oracle.admit(event.u, event.v)
        if oracle.query(event.u) != oracle.query(event.v):
            crossing += 1
    return crossing


def greedy_extension(
    base_cut: Number,
    hubs: Sequence[Tuple[Number, Number]],
    with_assignment: bool = False,
):
    """
    base_cut + Σ max(f_minus, f_plus) по хабам.

    С with_assignment=True возвращает ещё и стороны хабов: хаб встаёт
    напротив большей группы соседей, при равенстве на сторону +1.
    """
    value = base_cut + sum(max(f_minus, f_plus) for f_minus, f_plus in hubs)
    if not with_assignment:
        return value
    sides = [1 if f_minus >= f_plus else -1 for f_minus, f_plus in hubs]
    return value, sides


def offline_best_of_two(
    g: Graph,
    oracle: Oracle,
    params: EstimatorParams,
    greedy: GreedyMode = GreedyMode.SEQUENTIAL,
) -> OfflineResult:
    degrees = g.degrees()
    theta = params.threshold(g.m)
    high = [v for v in range(g.n) if degrees[v] >= theta]
    is_high = set(high)
    adjacency = g.adjacency()

    for u, v in sorted(g.edges):
        oracle.admit(u, v)
    side: Dict[int, int] = {v: oracle.query(v) for v in sorted(adjacency) if v not in is_high}

    low_cross = sum(1 for u, v in g.edges if u in side and v in side and side[u] != side[v])
    h_vs_l = sum(1 for u, v in g.edges if (u in is_high) != (v in is_high))

    static_pairs = []
    for v in high:
        low_sides = [side[w] for w in adjacency.get(v, []) if w not in is_high]
        static_pairs.append((low_sides.count(-1), low_sides.count(1)))
    static_value, static_sides = greedy_extension(low_cross, static_pairs, with_assignment=True)

    placed = dict(side)
    sequential_value = low_cross
    for v in high:
        placed_sides = [placed[w] for w in adjacency.get(v, []) if w in placed]
        value, (hub_side,) = greedy_extension(
            0, [(placed_sides.count(-1), placed_sides.count(1))], with_assignment=True
        )
        sequential_value += value
        placed[v] = hub_side

    if greedy is GreedyMode.STATIC:
        greedy_value = static_value
        assignment = dict(side)
        assignment.update(zip(high, static_sides))
    else:
        greedy_value = sequential_value
        assignment = placed

    which = CutChoice.GREEDY if greedy_value >= h_vs_l else CutChoice.H_VS_L
    if which is CutChoice.GREEDY:
        full = [assignment.get(v, 1) for v in range(g.n)]
    else:
        full = [1 if v in is_high else -1 for v in range(g.n)]
    return OfflineResult(
        value=max(greedy_value, h_vs_l),
        which=which,
        greedy_value=greedy_value,
        sequential_greedy_value=sequential_value,
        static_greedy_value=static_value,
        h_vs_l_value=h_vs_l,
        high_degree=high,
        assignment=full,
    )


def estimate_sum_by_sampling(
    values: Sequence[Number],
    cfg: SumEstimatorConfig,
    rng: np.random.Generator,
) -> float:
    """(n/t)·Σ x_i по t индексам, выбранным равномерно с возвращением"""
    n = len(values)
    if n == 0:
        raise DomainError("оценка суммы по пустому набору значений")
    t = cfg.t
    indices = rng.integers(0, n, size=t)
    if isinstance(values, np.ndarray):
        total = float(values[indices].sum())
    else:
        total = float(sum(values[int(i)] for i in indices))
    return n / t * total


def small_m_fallback(
    stream: GraphStream,
    params: EstimatorParams,
    threshold: Optional[float] = None,
) -> FallbackResult:
    if threshold is None:
        threshold = m_lower_bound(params.eps, params.delta)
    g = build_final_graph(stream)
    if g.m >= threshold:
        return FallbackResult(exact=False, diagnostic=f"m={g.m} не меньше порога {threshold:.3g}")
    if g.n > settings.n_exact:
        logger.warning(f"m={g.m} мало, но n={g.n} > n_exact={settings.n_exact}: точный перебор невозможен")
        return FallbackResult(
            exact=False,
            diagnostic=f"n={g.n} больше n_exact={settings.n_exact}, точный перебор невозможен",
        )
    value, assignment = brute_force_maxcut(g)
    return FallbackResult(exact=True, value=value, assignment=assignment)


def median_of_runs(run: Callable[[int], int], k: int, master_seed: int) -> int:
    """Медиана k независимых запусков; run получает собственный сид"""
    if k < 1 or k % 2 == 0:
        raise DomainError(f"k должно быть нечётным и >= 1, получено {k}")
    values = sorted(run(derive_seed(master_seed, i, SeedRole.MEDIAN)) for i in range(k))
    return values[k // 2]


def alg1_report(stream: GraphStream, oracle: Oracle, params: EstimatorParams) -> EstimateReport:
    x = alg1_run(stream, oracle)
    return EstimateReport(
        algorithm=Algorithm.ALG1.value,
        alg1_value=x,
        alg2_value=0,
        estimate=x,
        words_used=1,
        oracle_queries=oracle.distinct_query_count(),
        m_seen=len(stream),
        params={"eps": params.eps, "delta": params.delta},
    )


def half_report(stream: GraphStream, oracle: Oracle, params: EstimatorParams) -> EstimateReport:
    m = sum(event.delta for event in stream.events)
    return EstimateReport(
        algorithm=Algorithm.HALF.value,
        alg1_value=m // 2,
        alg2_value=0,
        estimate=m // 2,
        words_used=1,
        m_seen=m,
    )


def offline_report(stream: GraphStream, oracle: Oracle, params: EstimatorParams) -> EstimateReport:
    g = build_final_graph(stream)
    result = offline_best_of_two(g, oracle, params)
    return EstimateReport(
        algorithm=Algorithm.OFFLINE.value,
        alg1_value=result.greedy_value,
        alg2_value=result.h_vs_l_value,
        estimate=result.value,
        h_tilde_size=len(result.high_degree),
        words_used=2 * g.m,
        oracle_queries=oracle.distinct_query_count(),
        m_seen=g.m,
        exact=False,
        params={
            **params.derived(),
            "theta": params.threshold(g.m),
            "which": result.which.value,
            "sequential_greedy": result.sequential_greedy_value,
            "static_greedy": result.static_greedy_value,
        },
    )

