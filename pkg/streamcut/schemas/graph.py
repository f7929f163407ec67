from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class StreamKind(str, Enum):
    INSERTION_ARBITRARY = "insertion_arbitrary"
    INSERTION_RANDOM_ORDER = "insertion_random_order"
    DYNAMIC = "dynamic"

    @property
    def is_insertion_only(self) -> bool:
        return self is not StreamKind.DYNAMIC


class EdgeEvent(BaseModel):
    """Элемент потока (u, v, Δ); после канонизации u < v"""
    model_config = ConfigDict(frozen=True)

    u: int = Field(ge=0)
    v: int = Field(ge=0)
    delta: int = 1

    @model_validator(mode="after")
    def _check_canonical(self):
        if self.u >= self.v:
            raise ValueError(f"ребро ({self.u}, {self.v}) не в канонической форме u < v")
        if self.delta not in (1, -1):
            raise ValueError(f"delta должна быть +1 или -1, получено {self.delta}")
        return self

    @property
    def edge(self) -> Tuple[int, int]:
        return (self.u, self.v)


class GraphStream(BaseModel):
    """Заголовок (n, kind) и упорядоченные события"""
    n: int = Field(ge=0)
    events: List[EdgeEvent] = Field(default_factory=list)
    kind: StreamKind = StreamKind.INSERTION_ARBITRARY

    @model_validator(mode="after")
    def _check_insertion_only(self):
        if self.kind is not StreamKind.DYNAMIC:
            for index, event in enumerate(self.events):
                if event.delta != 1:
                    raise ValueError(f"событие #{index}: удаление в insertion-only потоке {self.kind.value}")
        return self

    def __len__(self) -> int:
        return len(self.events)


class Graph(BaseModel):
    """Простой неориентированный граф без петель"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    edges: FrozenSet[Tuple[int, int]] = frozenset()

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {}
        for u, v in sorted(self.edges):
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return adj

    def cut_value(self, assignment: List[int]) -> int:
        return sum(1 for u, v in self.edges if assignment[u] != assignment[v])


class PlantedInstance(BaseModel):
    stream: GraphStream
    opt_value: int = Field(ge=0)
    opt_assignment: Optional[List[int]] = None
    opt_is_exact: bool = True

    def metadata(self) -> dict:
        """JSON-сайдкар с известным OPT"""
        return {
            "opt_value": self.opt_value,
            "opt_is_exact": self.opt_is_exact,
            "opt_assignment": self.opt_assignment,
        }
