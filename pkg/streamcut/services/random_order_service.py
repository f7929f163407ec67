"""
Оценщики для insertion-only потоков в случайном порядке.

Первые t рёбер потока дают равномерную выборку, их концы H̃ покрывают все
вершины высокой степени. Дальше для вершин H̃ ведутся точные счётчики, а
рёбра вне H̃ учитываются одним счётчиком разрезанных предсказаний.
"""
import logging
import random
from typing import Dict, List, Optional, Set, Tuple

from ..core.errors import StreamKindError
from ..core.seeding import SeedRole, derive_seed
from ..schemas.estimator import EstimateReport, EstimatorParams, HubCounters
from ..schemas.experiment import Algorithm
from ..schemas.graph import EdgeEvent, GraphStream, StreamKind
from ..sketches.reservoir import Reservoir
from .estimator_service import greedy_extension
from .oracle_service import Oracle

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _require_random_order(stream: GraphStream) -> None:
    if stream.kind is not StreamKind.INSERTION_RANDOM_ORDER:
        raise StreamKindError(f"ожидался поток insertion_random_order, получен {stream.kind.value}")


class _PrefixSplit:
    """Общая часть: префикс F, кандидаты H̃ и рёбра из H̃ наружу"""

    def __init__(self, oracle: Oracle, params: EstimatorParams):
        self.oracle = oracle
        self.params = params
        self.t = params.sample_size
        self.stored: List[Edge] = []
        self.h_tilde: Set[int] = set()
        self.to_outside: Dict[int, int] = {}
        self.m_seen = 0

    def _in_prefix(self, event: EdgeEvent) -> bool:
        self.oracle.admit(event.u, event.v)
        self.m_seen += 1
        if self.m_seen <= self.t:
            self.stored.append(event.edge)
            self.h_tilde.update(event.edge)
            return True
        return False

    def split_high(self) -> Tuple[Set[int], Set[int]]:
        """H = {v ∈ H̃ : |{e ∈ F : v ∈ e}| + e(v, V∖H̃) >= θ}, S̃ = H̃∖H"""
        theta = self.params.threshold(self.m_seen)
        incidence: Dict[int, int] = {}
        for u, v in self.stored:
            incidence[u] = incidence.get(u, 0) + 1
            incidence[v] = incidence.get(v, 0) + 1
        high = {
            v for v in self.h_tilde
            if incidence.get(v, 0) + self.to_outside.get(v, 0) >= theta
        }
        return high, self.h_tilde - high


class RandomOrderEstimator(_PrefixSplit):

    def __init__(self, oracle: Oracle, params: EstimatorParams):
        super().__init__(oracle, params)
        self.l_plus: Dict[int, int] = {}
        self.l_minus: Dict[int, int] = {}
        self.cross = 0

    def process(self, event: EdgeEvent) -> None:
        if self._in_prefix(event):
            return
        u, v = event.edge
        y_u, y_v = self.oracle.query(u), self.oracle.query(v)
        u_in, v_in = u in self.h_tilde, v in self.h_tilde
        if u_in and v_in:
            self.stored.append((u, v))
        elif u_in or v_in:
            hub, other_label = (u, y_v) if u_in else (v, y_u)
            self.to_outside[hub] = self.to_outside.get(hub, 0) + 1
            counters = self.l_plus if other_label == 1 else self.l_minus
            counters[hub] = counters.get(hub, 0) + 1
        elif y_u != y_v:
            self.cross += 1

    def finalize(self) -> EstimateReport:
        high, folded = self.split_high()
        label = {w: self.oracle.query(w) for w in sorted(folded)}
        e_plus = dict(self.l_plus)
        e_minus = dict(self.l_minus)
        cross = self.cross

        for u, v in self.stored:
            if u in high and v not in high:
                counters = e_plus if label[v] == 1 else e_minus
                counters[u] = counters.get(u, 0) + 1
            elif v in high and u not in high:
                counters = e_plus if label[u] == 1 else e_minus
                counters[v] = counters.get(v, 0) + 1
            elif u in folded and v in folded and label[u] != label[v]:
                cross += 1
        for w in folded:
            cross += self.l_minus.get(w, 0) if label[w] == 1 else self.l_plus.get(w, 0)

        hubs = [
            HubCounters(
                vertex=v,
                f_plus=e_plus.get(v, 0),
                f_minus=e_minus.get(v, 0),
                e_to_outside=self.to_outside.get(v, 0),
                e_l_plus=self.l_plus.get(v, 0),
                e_l_minus=self.l_minus.get(v, 0),
            )
            for v in sorted(high)
        ]
        alg1 = greedy_extension(cross, [(h.f_minus, h.f_plus) for h in hubs])
        alg2 = sum(h.f_minus + h.f_plus for h in hubs)
        logger.info(
            f"alg2: m={self.m_seen}, |F|={len(self.stored)}, |H̃|={len(self.h_tilde)}, "
            f"|H|={len(high)}, ALG1={alg1}, ALG2={alg2}"
        )
        return EstimateReport(
            algorithm=Algorithm.ALG2.value,
            alg1_value=alg1,
            alg2_value=alg2,
            estimate=max(alg1, alg2),
            h_tilde_size=len(self.h_tilde),
            words_used=2 * len(self.stored) + 3 * len(self.h_tilde) + 1,
            oracle_queries=self.oracle.distinct_query_count(),
            m_seen=self.m_seen,
            params={**self.params.derived(), "theta": self.params.threshold(self.m_seen)},
            substitutions=self.params.substitutions(),
            hubs=hubs,
            h_tilde=sorted(self.h_tilde),
        )


def alg2_run(stream: GraphStream, oracle: Oracle, params: EstimatorParams) -> EstimateReport:
    _require_random_order(stream)
    estimator = RandomOrderEstimator(oracle, params)
    for event in stream.events:
        estimator.process(event)
    return estimator.finalize()


class ConstantQueryEstimator(_PrefixSplit):
    """
    Вариант без запросов во время прохода: вместо счётчиков по меткам
    хранятся резервуары рёбер G[L̃] и соседей каждого кандидата в L̃,
    метки спрашиваются только у выборок в конце. Число различных запросов
    не больше |H̃| + 2s + |H̃|·s и не зависит от n.
    """

    def __init__(self, oracle: Oracle, params: EstimatorParams, seed: int, eta: Optional[float] = None):
        super().__init__(oracle, params)
        if eta is not None:
            params = params.model_copy(update={"eta": eta})
            self.params = params
        self.s = params.query_sample_size
        self.rng = random.Random(derive_seed(seed, 0, SeedRole.ESTIMATOR))
        self.low_edges = 0
        self.low_sample = Reservoir(self.s, self.rng)
        self.neighbour_samples: Dict[int, Reservoir] = {}

    def process(self, event: EdgeEvent) -> None:
        if self._in_prefix(event):
            return
        u, v = event.edge
        u_in, v_in = u in self.h_tilde, v in self.h_tilde
        if u_in and v_in:
            self.stored.append((u, v))
        elif u_in or v_in:
            hub, other = (u, v) if u_in else (v, u)
            self.to_outside[hub] = self.to_outside.get(hub, 0) + 1
            sample = self.neighbour_samples.get(hub)
            if sample is None:
                sample = self.neighbour_samples[hub] = Reservoir(self.s, self.rng)
            sample.offer(other)
        else:
            self.low_edges += 1
            self.low_sample.offer((u, v))

    def _side_estimates(self, v: int) -> Tuple[float, float]:
        """Оценки (e(v, L̃⁻), e(v, L̃⁺)) по резервуару T_v"""
        sample = self.neighbour_samples.get(v)
        if sample is None or not sample.items:
            return 0.0, 0.0
        plus = sum(1 for w in sample.items if self.oracle.query(w) == 1)
        scale = self.to_outside[v] / len(sample.items)
        return scale * (len(sample.items) - plus), scale * plus

    def finalize(self) -> EstimateReport:
        high, folded = self.split_high()

        part_low = 0.0
        if self.low_edges and self.low_sample.items:
            crossing = sum(1 for a, b in self.low_sample.items if self.oracle.query(a) != self.oracle.query(b))
            part_low = self.low_edges / len(self.low_sample.items) * crossing

        label = {w: self.oracle.query(w) for w in sorted(folded)}
        part_folded = 0
        to_folded: Dict[int, List[int]] = {v: [0, 0] for v in high}
        alg2 = sum(self.to_outside.get(v, 0) for v in high)
        for u, v in self.stored:
            if u in folded and v in folded:
                part_folded += label[u] != label[v]
            elif u in high and v in folded:
                to_folded[u][label[v] == 1] += 1
                alg2 += 1
            elif v in high and u in folded:
                to_folded[v][label[u] == 1] += 1
                alg2 += 1

        part_boundary = 0.0
        for w in sorted(folded):
            est_minus, est_plus = self._side_estimates(w)
            part_boundary += est_minus if label[w] == 1 else est_plus

        hub_pairs = []
        for v in sorted(high):
            est_minus, est_plus = self._side_estimates(v)
            hub_pairs.append((to_folded[v][0] + est_minus, to_folded[v][1] + est_plus))
        alg1_float = greedy_extension(part_low + part_folded + part_boundary, hub_pairs)
        alg1 = max(0, int(round(alg1_float)))

        budget = len(self.h_tilde) + 2 * self.s + len(self.h_tilde) * self.s
        queries = self.oracle.distinct_query_count()
        logger.info(
            f"alg2_cq: m={self.m_seen}, |H̃|={len(self.h_tilde)}, s={self.s}, "
            f"запросов={queries} (граница {budget}), ALG1~{alg1_float:.1f}, ALG2={alg2}"
        )
        return EstimateReport(
            algorithm=Algorithm.ALG2_CQ.value,
            alg1_value=alg1,
            alg2_value=alg2,
            estimate=max(alg1, alg2),
            h_tilde_size=len(self.h_tilde),
            words_used=2 * len(self.stored) + len(self.h_tilde) * (2 + self.s) + 2 * self.s + 2,
            oracle_queries=queries,
            m_seen=self.m_seen,
            params={
                **self.params.derived(),
                "theta": self.params.threshold(self.m_seen),
                "eta": self.params.query_eta,
                "query_sample": self.s,
                "query_budget": budget,
                "alg1_unrounded": alg1_float,
            },
            substitutions=self.params.substitutions(),
            h_tilde=sorted(self.h_tilde),
        )


def alg2_constant_query_run(
    stream: GraphStream,
    oracle: Oracle,
    params: EstimatorParams,
    eta: Optional[float] = None,
    seed: int = 0,
) -> EstimateReport:
    _require_random_order(stream)
    estimator = ConstantQueryEstimator(oracle, params, seed, eta=eta)
    for event in stream.events:
        estimator.process(event)
    return estimator.finalize()
