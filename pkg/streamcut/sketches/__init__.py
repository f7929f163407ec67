from .hashing import MERSENNE_61, HashFamily, PolynomialHash
from .count_min import CountMin, cm_update, cm_query
from .reservoir import Reservoir, reservoir_offer
from .l0_sampler import L0Outcome, L0Sampler, OneSparseRecovery, l0_update, l0_sample
from .exact import ExactCounter, ExactL0Sampler

__all__ = [
    "MERSENNE_61", "HashFamily", "PolynomialHash",
    "CountMin", "cm_update", "cm_query",
    "Reservoir", "reservoir_offer",
    "L0Outcome", "L0Sampler", "OneSparseRecovery", "l0_update", "l0_sample",
    "ExactCounter", "ExactL0Sampler",
]
