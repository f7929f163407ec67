"""
Оценщики на скетчах для потоков в произвольном порядке и динамических.

Для каждой вершины держим два CountMin: CM[+] считает соседей с меткой +1,
CM[-] соседей с меткой -1. Ребро (u, v) увеличивает CM[метка(u)] в ключе v
и CM[метка(v)] в ключе u. Отдельный счётчик e(V+, V-) копит рёбра
с разными метками. Кандидаты в хабы H̃ берутся из выборки рёбер:
резервуар для insertion-only, t ℓ0-сэмплеров для динамических потоков.
"""
import logging
import random
from typing import Callable, List, Optional, Set, Tuple

from ..core.errors import StreamKindError
from ..core.seeding import SeedRole, derive_seed
from ..schemas.estimator import EstimateReport, EstimatorParams, HubCounters
from ..schemas.experiment import Algorithm
from ..schemas.graph import EdgeEvent, GraphStream
from ..sketches.count_min import CountMin
from ..sketches.l0_sampler import L0Outcome, L0Sampler
from ..sketches.reservoir import Reservoir
from .estimator_service import greedy_extension
from .oracle_service import Oracle

logger = logging.getLogger(__name__)

CounterFactory = Callable[..., object]
SamplerFactory = Callable[..., object]
Edge = Tuple[int, int]


class _SketchEstimator:
    algorithm = Algorithm.ALG3

    def __init__(
        self,
        oracle: Oracle,
        params: EstimatorParams,
        seed: int,
        cm_factory: Optional[CounterFactory] = None,
    ):
        self.oracle = oracle
        self.params = params
        self.seed = seed
        self.t = params.sample_size
        factory = cm_factory or CountMin
        cm_seed = derive_seed(seed, 0, SeedRole.ESTIMATOR)
        # обе таблицы с одними и теми же хешами
        self.cm_plus = factory(params.cm_width, params.cm_depth, cm_seed)
        self.cm_minus = factory(params.cm_width, params.cm_depth, cm_seed)
        self.cross_count = 0
        self.m_seen = 0
        self.h_tilde: List[int] = []

    def _counter_for(self, label: int):
        return self.cm_plus if label == 1 else self.cm_minus

    def _update_sketches(self, event: EdgeEvent, cross_step: int) -> None:
        u, v = event.edge
        self.oracle.admit(u, v)
        y_u, y_v = self.oracle.query(u), self.oracle.query(v)
        if y_u != y_v:
            self.cross_count += cross_step
        self._counter_for(y_u).update(v, event.delta)
        self._counter_for(y_v).update(u, event.delta)
        self.m_seen += event.delta

    def _sample_words(self) -> int:
        raise NotImplementedError

    def _sampled_edges(self) -> List[Edge]:
        raise NotImplementedError

    def finalize(self) -> EstimateReport:
        edges = self._sampled_edges()
        candidates: Set[int] = set()
        for u, v in edges:
            candidates.update((u, v))
        self.h_tilde = sorted(candidates)

        hubs = []
        for v in self.h_tilde:
            label = self.oracle.query(v)
            hubs.append(HubCounters(
                vertex=v, label=label,
                f_plus=self.cm_plus.query(v), f_minus=self.cm_minus.query(v),
            ))
        e_low = self.cross_count - sum(h.f_minus if h.label == 1 else h.f_plus for h in hubs)
        if e_low < 0:
            logger.warning(f"{self.algorithm.value}: оценка e(L+, L-) = {e_low} < 0, обрезана до 0")
            e_low = 0
        alg1 = greedy_extension(e_low, [(h.f_minus, h.f_plus) for h in hubs])
        alg2 = sum(h.f_minus + h.f_plus for h in hubs)
        words = self.cm_plus.words + self.cm_minus.words + self._sample_words() + 1
        logger.info(
            f"{self.algorithm.value}: m={self.m_seen}, |H̃|={len(hubs)}, "
            f"ALG1={alg1}, ALG2={alg2}, слов={words}"
        )
        return EstimateReport(
            algorithm=self.algorithm.value,
            alg1_value=alg1,
            alg2_value=alg2,
            estimate=max(alg1, alg2),
            h_tilde_size=len(hubs),
            words_used=words,
            oracle_queries=self.oracle.distinct_query_count(),
            m_seen=self.m_seen,
            params={**self.params.derived(), "theta": self.params.threshold(max(0, self.m_seen))},
            substitutions=self.params.substitutions(),
            hubs=hubs,
            h_tilde=self.h_tilde,
        )


class ArbitraryOrderEstimator(_SketchEstimator):
    algorithm = Algorithm.ALG3

    def __init__(self, oracle, params, seed, cm_factory=None):
        super().__init__(oracle, params, seed, cm_factory)
        self.sample: Reservoir[Edge] = Reservoir(self.t, random.Random(derive_seed(seed, 1, SeedRole.ESTIMATOR)))

    def process(self, event: EdgeEvent) -> None:
        self._update_sketches(event, 1)
        self.sample.offer(event.edge)

    def _sample_words(self) -> int:
        return 2 * self.t

    def _sampled_edges(self) -> List[Edge]:
        return list(self.sample.items)


class DynamicEstimator(_SketchEstimator):
    algorithm = Algorithm.ALG4

    def __init__(self, oracle, params, seed, n: int, cm_factory=None, sampler_factory: Optional[SamplerFactory] = None):
        super().__init__(oracle, params, seed, cm_factory)
        self.n = n
        factory = sampler_factory or L0Sampler
        sampler_seed = derive_seed(seed, 1, SeedRole.ESTIMATOR)
        self.samplers = [
            factory(
                domain_size=max(1, n * n),
                failure=params.l0_failure,
                seed=derive_seed(sampler_seed, j, SeedRole.ESTIMATOR),
                copies=params.l0_copies,
            )
            for j in range(self.t)
        ]

    def process(self, event: EdgeEvent) -> None:
        step = 1 if self.params.strict_cross_counter else event.delta
        self._update_sketches(event, step)
        index = event.u * self.n + event.v
        for sampler in self.samplers:
            sampler.update(index, event.delta)

    def _sample_words(self) -> int:
        return sum(sampler.words for sampler in self.samplers)

    def _sampled_edges(self) -> List[Edge]:
        found = set()
        failed = 0
        for sampler in self.samplers:
            outcome = sampler.sample()
            if outcome is L0Outcome.FAIL:
                failed += 1
            elif outcome is not L0Outcome.EMPTY:
                found.add(divmod(outcome, self.n))
        if failed:
            logger.warning(f"alg4: {failed} из {len(self.samplers)} ℓ0-сэмплеров вернули FAIL")
        return sorted(found)


def alg3_run(
    stream: GraphStream,
    oracle: Oracle,
    params: EstimatorParams,
    seed: int = 0,
    cm_factory: Optional[CounterFactory] = None,
) -> EstimateReport:
    if not stream.kind.is_insertion_only:
        raise StreamKindError("alg3 работает только с insertion-only потоками")
    estimator = ArbitraryOrderEstimator(oracle, params, seed, cm_factory)
    for event in stream.events:
        estimator.process(event)
    return estimator.finalize()


def alg4_run(
    stream: GraphStream,
    oracle: Oracle,
    params: EstimatorParams,
    seed: int = 0,
    cm_factory: Optional[CounterFactory] = None,
    sampler_factory: Optional[SamplerFactory] = None,
) -> EstimateReport:
    estimator = DynamicEstimator(oracle, params, seed, stream.n, cm_factory, sampler_factory)
    for event in stream.events:
        estimator.process(event)
    return estimator.finalize()
