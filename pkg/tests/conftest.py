from typing import Iterable, List, Sequence

import pytest

from streamcut.schemas import EdgeEvent, EstimatorParams, GraphStream, StreamKind
from streamcut.services import NoisyOracle


def _events(edges: Iterable[Sequence[int]]) -> List[EdgeEvent]:
    events = []
    for edge in edges:
        u, v = edge[0], edge[1]
        delta = edge[2] if len(edge) > 2 else 1
        events.append(EdgeEvent(u=min(u, v), v=max(u, v), delta=delta))
    return events


@pytest.fixture
def stream_of():
    def build(n: int, edges: Iterable[Sequence[int]], kind: StreamKind = StreamKind.INSERTION_ARBITRARY):
        return GraphStream(n=n, events=_events(edges), kind=kind)
    return build


@pytest.fixture
def perfect_oracle():
    """Оракул с ε = 1/2: метки совпадают с x*"""
    def build(x_star: Sequence[int]) -> NoisyOracle:
        return NoisyOracle(list(x_star), 0.5, rng_seed=0)
    return build


@pytest.fixture
def params():
    def build(**overrides) -> EstimatorParams:
        data = {"eps": 0.5, "delta": 0.2}
        data.update(overrides)
        return EstimatorParams(**data)
    return build

