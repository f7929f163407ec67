import random
from typing import Generic, List, Optional, TypeVar

T = TypeVar("T")


class Reservoir(Generic[T]):
    """Равномерная выборка без возвращения размера min(seen, capacity)"""

    def __init__(self, capacity: int, rng: random.Random):
        if capacity <= 0:
            raise ValueError(f"capacity должна быть > 0, получено {capacity}")
        self.capacity = capacity
        self.items: List[T] = []
        self.seen = 0
        self._rng = rng

    def offer(self, item: T, rng: Optional[random.Random] = None) -> None:
        """rng, если передан, используется вместо генератора резервуара"""
        self.seen += 1
        if self.seen <= self.capacity:
            self.items.append(item)
            return
        slot = (rng or self._rng).randrange(self.seen)
        if slot < self.capacity:
            self.items[slot] = item

    def __len__(self) -> int:
        return len(self.items)

    @property
    def words(self) -> int:
        return self.capacity


def reservoir_offer(r: Reservoir[T], item: T, rng: Optional[random.Random] = None) -> None:
    r.offer(item, rng)
