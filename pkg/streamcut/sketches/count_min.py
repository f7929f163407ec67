"""
CountMin со знаковыми (линейными) обновлениями.

Раскладка стандартная: W столбцов на строку (ceil(e/ε')), D строк
(ceil(ln(1/δ'))). В оценщиках W = ceil(e/(ε⁷δ³)) и D = ceil(ln(8β/(ε⁴δ⁴))).
"""
import logging
import struct

import numpy as np

from ..core.config import settings
from ..core.errors import CapacityError
from .hashing import HashFamily

logger = logging.getLogger(__name__)

MAGIC = b"SCCM"
VERSION = 1
_HEADER = struct.Struct("<4sHII")


class CountMin:

    def __init__(self, width: int, depth: int, seed: int, hashes: HashFamily = None):
        if width * depth > settings.max_sketch_words:
            raise CapacityError(
                f"CountMin {depth}x{width} превышает лимит {settings.max_sketch_words} слов; "
                f"задайте cm_width_override/cm_depth_override"
            )
        self.hashes = hashes if hashes is not None else HashFamily(depth, width, seed)
        self.width = width
        self.depth = depth
        self.table = np.zeros((depth, width), dtype=np.int64)
        self._rows = np.arange(depth)

    @property
    def words(self) -> int:
        return self.width * self.depth

    def update(self, key: int, delta: int = 1) -> None:
        # счётчики int64: на настольных масштабах переполнение недостижимо
        self.table[self._rows, self.hashes.buckets(key)] += delta

    def query(self, key: int) -> int:
        return int(self.table[self._rows, self.hashes.buckets(key)].min())

    def same_hashes(self, other: "CountMin") -> bool:
        return (self.width == other.width and self.depth == other.depth
                and self.hashes.seeds == other.hashes.seeds)

    def merge(self, other: "CountMin") -> "CountMin":
        """Поэлементная сумма таблиц с одинаковыми сидами"""
        if not self.same_hashes(other):
            raise ValueError("объединять можно только CountMin с одинаковыми хешами")
        merged = CountMin(self.width, self.depth, seed=0, hashes=self.hashes)
        merged.table = self.table + other.table
        return merged

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(MAGIC, VERSION, self.depth, self.width)
        seeds = np.array(self.hashes.seeds, dtype="<u8").tobytes()
        return header + seeds + self.table.astype("<i8").tobytes()

    @classmethod
    def from_bytes(cls, payload: bytes) -> "CountMin":
        magic, version, depth, width = _HEADER.unpack_from(payload, 0)
        if magic != MAGIC or version != VERSION:
            raise ValueError(f"неизвестный формат CountMin: {magic!r} v{version}")
        offset = _HEADER.size
        seeds = np.frombuffer(payload, dtype="<u8", count=2 * depth, offset=offset).reshape(depth, 2)
        offset += 16 * depth
        table = np.frombuffer(payload, dtype="<i8", count=depth * width, offset=offset)
        sketch = cls(width, depth, seed=0, hashes=HashFamily.from_seeds(width, seeds.tolist()))
        sketch.table = table.reshape(depth, width).astype(np.int64)
        return sketch


def cm_update(cm: CountMin, key: int, delta: int) -> None:
    cm.update(key, delta)


def cm_query(cm: CountMin, key: int) -> int:
    return cm.query(key)
