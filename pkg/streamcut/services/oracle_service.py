import logging
from typing import Dict, List, Sequence, Set, Union

from ..core.errors import DomainError, OracleAccessError
from ..schemas.estimator import EstimatorParams

logger = logging.getLogger(__name__)

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class NoisyOracle:
    """
    ε-точный предсказатель: для каждой вершины v независимо
    Y_v = x*_v с вероятностью 1/2 + ε, иначе -x*_v.

    Случайность вершины v берётся из хеша (seed, v), поэтому метка
    не зависит от порядка и числа запросов. Память растёт только
    на запомненные ответы, по которым считаются различные запросы.
    """

    def __init__(self, x_star: Sequence[int], eps: float, rng_seed: int):
        if not 0.0 < eps <= 0.5:
            raise DomainError(f"eps должно лежать в (0, 1/2], получено {eps}")
        if any(x not in (1, -1) for x in x_star):
            raise DomainError("назначение x* должно состоять из +1 и -1")
        self.x_star = list(x_star)
        self.eps = eps
        self.rng_seed = rng_seed
        self._key = _splitmix64(rng_seed & _MASK)
        self._correct_below = 0.5 + eps
        self._answers: Dict[int, int] = {}

    @property
    def n(self) -> int:
        return len(self.x_star)

    def _uniform(self, v: int) -> float:
        return (_splitmix64(self._key ^ ((v * 0xD1B54A32D192ED03) & _MASK)) >> 11) / float(1 << 53)

    def label_of(self, v: int) -> int:
        x = self.x_star[v]
        return x if self._uniform(v) < self._correct_below else -x

    def query(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise DomainError(f"вершина {v} вне [0, {self.n})")
        answer = self._answers.get(v)
        if answer is None:
            answer = self._answers[v] = self.label_of(v)
        return answer

    def distinct_query_count(self) -> int:
        return len(self._answers)

    def admit(self, u: int, v: int) -> None:
        pass

    def agreement(self) -> float:
        """Доля вершин, где предсказание совпало с x*"""
        if not self.n:
            return 1.0
        return sum(self.label_of(v) == self.x_star[v] for v in range(self.n)) / self.n


class EdgeAnnotatedOracle:
    """Предсказания приходят вместе с рёбрами: спрашивать можно только уже встреченные вершины"""

    def __init__(self, inner: NoisyOracle):
        self.inner = inner
        self._seen: Set[int] = set()

    @property
    def n(self) -> int:
        return self.inner.n

    def admit(self, u: int, v: int) -> None:
        self._seen.add(u)
        self._seen.add(v)

    def query(self, v: int) -> int:
        if v not in self._seen:
            raise OracleAccessError(f"метка вершины {v} запрошена до появления её ребра")
        return self.inner.query(v)

    def distinct_query_count(self) -> int:
        return self.inner.distinct_query_count()


Oracle = Union[NoisyOracle, EdgeAnnotatedOracle]


def make_oracle(x_star: List[int], params: EstimatorParams, rng_seed: int) -> Oracle:
    oracle = NoisyOracle(x_star, params.eps, rng_seed)
    if params.edge_annotated:
        logger.debug("Оракул в режиме предсказаний, приходящих с рёбрами")
        return EdgeAnnotatedOracle(oracle)
    return oracle
