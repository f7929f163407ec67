"""Хеш-семейства над простым Мерсенна 2^61 - 1."""
from typing import List, Sequence, Tuple

import numpy as np

MERSENNE_61 = (1 << 61) - 1


def _draw(rng: np.random.Generator, low: int, count: int) -> List[int]:
    return [int(x) for x in rng.integers(low, MERSENNE_61, size=count, dtype=np.uint64)]


class HashFamily:
    """depth попарно независимых функций ((a*key + b) mod p) mod width"""

    def __init__(self, depth: int, width: int, seed: int):
        if depth < 1 or width < 1:
            raise ValueError(f"depth и width должны быть положительны, получено {depth}, {width}")
        self.depth = depth
        self.width = width
        self.prime_modulus = MERSENNE_61
        rng = np.random.default_rng(seed)
        self.seeds: List[Tuple[int, int]] = list(zip(_draw(rng, 1, depth), _draw(rng, 0, depth)))

    @classmethod
    def from_seeds(cls, width: int, seeds: Sequence[Tuple[int, int]]) -> "HashFamily":
        family = cls.__new__(cls)
        family.depth = len(seeds)
        family.width = width
        family.prime_modulus = MERSENNE_61
        family.seeds = [(int(a), int(b)) for a, b in seeds]
        return family

    def hash(self, row: int, key: int) -> int:
        a, b = self.seeds[row]
        return ((a * key + b) % MERSENNE_61) % self.width

    def buckets(self, key: int) -> List[int]:
        width = self.width
        return [((a * key + b) % MERSENNE_61) % width for a, b in self.seeds]


class PolynomialHash:
    """k-независимый хеш: многочлен степени k-1 по модулю 2^61 - 1"""

    def __init__(self, independence: int, seed: int):
        if independence < 2:
            raise ValueError(f"независимость должна быть >= 2, получено {independence}")
        rng = np.random.default_rng(seed)
        self.coefficients = _draw(rng, 0, independence - 1) + _draw(rng, 1, 1)

    def __call__(self, key: int) -> int:
        value = 0
        for coefficient in reversed(self.coefficients):
            value = (value * key + coefficient) % MERSENNE_61
        return value
