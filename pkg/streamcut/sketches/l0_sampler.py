"""
ℓ0-сэмплер: геометрические уровни подвыборки, на каждом уровне 1-разреженное
восстановление с проверкой отпечатка. Для вероятности FAIL <= δ' держим
ceil(log2(1/δ')) независимых копий и берём первую успешную.
"""
import logging
import math
from enum import Enum
from typing import List, Optional, Union

import numpy as np

from ..core.config import settings
from .hashing import MERSENNE_61, PolynomialHash

logger = logging.getLogger(__name__)


class L0Outcome(str, Enum):
    FAIL = "FAIL"
    EMPTY = "EMPTY"


SampleResult = Union[int, L0Outcome]


class OneSparseRecovery:
    __slots__ = ("w", "s", "z")

    def __init__(self):
        self.w = 0
        self.s = 0
        self.z = 0

    def update(self, index: int, delta: int, r_power: int) -> None:
        self.w += delta
        self.s += delta * index
        self.z = (self.z + delta * r_power) % MERSENNE_61

    def is_zero(self) -> bool:
        return self.w == 0 and self.s == 0 and self.z == 0

    def recover(self, domain_size: int, r: int) -> Optional[int]:
        if self.w == 0 or self.s % self.w:
            return None
        index = self.s // self.w
        if not 0 <= index < domain_size:
            return None
        if self.z != (self.w * pow(r, index, MERSENNE_61)) % MERSENNE_61:
            return None
        return index


class _SamplerCopy:
    __slots__ = ("level_hash", "r", "levels")

    def __init__(self, level_count: int, independence: int, seed: int):
        rng = np.random.default_rng(seed)
        self.level_hash = PolynomialHash(independence, int(rng.integers(0, 2 ** 63)))
        self.r = int(rng.integers(2, MERSENNE_61, dtype=np.uint64))
        self.levels = [OneSparseRecovery() for _ in range(level_count)]


class L0Sampler:

    def __init__(
        self,
        domain_size: int,
        failure: float,
        seed: int,
        copies: Optional[int] = None,
        independence: Optional[int] = None,
    ):
        if domain_size < 1:
            raise ValueError(f"domain_size должен быть >= 1, получено {domain_size}")
        self.domain_size = domain_size
        self.failure = failure
        self.level_count = max(1, math.ceil(math.log2(domain_size))) + 1
        copies = copies if copies is not None else max(1, math.ceil(math.log2(1.0 / failure)))
        independence = independence if independence is not None else settings.l0_independence
        seeds = np.random.SeedSequence(seed).generate_state(copies, dtype=np.uint64)
        self.copies: List[_SamplerCopy] = [
            _SamplerCopy(self.level_count, independence, int(s)) for s in seeds
        ]

    @property
    def words(self) -> int:
        per_copy = 3 * self.level_count + len(self.copies[0].level_hash.coefficients) + 1
        return per_copy * len(self.copies)

    def level_of(self, copy: _SamplerCopy, index: int) -> int:
        h = copy.level_hash(index)
        top = self.level_count - 1
        if h == 0:
            return top
        # Pr[L >= j] = 2^-j: число младших нулевых битов
        return min((h & -h).bit_length() - 1, top)

    def update(self, index: int, delta: int) -> None:
        for copy in self.copies:
            r_power = pow(copy.r, index, MERSENNE_61)
            for j in range(self.level_of(copy, index) + 1):
                copy.levels[j].update(index, delta, r_power)

    def is_empty(self) -> bool:
        return all(level.is_zero() for copy in self.copies for level in copy.levels)

    def sample(self) -> SampleResult:
        if self.is_empty():
            return L0Outcome.EMPTY
        for copy in self.copies:
            for level in reversed(copy.levels):
                if level.w == 0:
                    continue
                index = level.recover(self.domain_size, copy.r)
                if index is not None:
                    return index
        return L0Outcome.FAIL


def l0_update(s: L0Sampler, index: int, delta: int) -> None:
    s.update(index, delta)


def l0_sample(s: L0Sampler) -> SampleResult:
    return s.sample()
