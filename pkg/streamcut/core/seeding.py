import random
from enum import IntEnum

import numpy as np


class SeedRole(IntEnum):
    INSTANCE = 0
    ORACLE = 1
    ESTIMATOR = 2
    MEDIAN = 3


def derive_seed(master_seed: int, index: int, role: SeedRole, *extra: int) -> int:
    """Сид из счётчика (master_seed, index, role): новые триалы не сдвигают старые"""
    entropy = [int(master_seed) & 0xFFFFFFFFFFFFFFFF, int(index), int(role), *map(int, extra)]
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 32) | int(state[1])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def make_random(seed: int) -> random.Random:
    """Скалярный ГСЧ для горячих циклов (резервуары, перемешивания)"""
    return random.Random(seed)
