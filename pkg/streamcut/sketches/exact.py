"""Точные двойники скетчей для тестов оценщиков без шума скетчей."""
import random
from collections import defaultdict
from typing import Dict

from .l0_sampler import L0Outcome, SampleResult


class ExactCounter:
    """Интерфейс CountMin, но query возвращает точную частоту"""

    def __init__(self, width: int = 1, depth: int = 1, seed: int = 0):
        self.width = width
        self.depth = depth
        self.counts: Dict[int, int] = defaultdict(int)

    @property
    def words(self) -> int:
        return self.width * self.depth

    def update(self, key: int, delta: int = 1) -> None:
        self.counts[key] += delta

    def query(self, key: int) -> int:
        return self.counts.get(key, 0)


class ExactL0Sampler:
    """Хранит носитель целиком и выбирает из него равномерно"""

    def __init__(self, domain_size: int = 1, failure: float = 0.0, seed: int = 0, **_):
        self.domain_size = domain_size
        self.counts: Dict[int, int] = defaultdict(int)
        self._rng = random.Random(seed)

    @property
    def words(self) -> int:
        return 0

    def update(self, index: int, delta: int) -> None:
        self.counts[index] += delta
        if self.counts[index] == 0:
            del self.counts[index]

    def is_empty(self) -> bool:
        return not self.counts

    def sample(self) -> SampleResult:
        if not self.counts:
            return L0Outcome.EMPTY
        return self._rng.choice(sorted(self.counts))
