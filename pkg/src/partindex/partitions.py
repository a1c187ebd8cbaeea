"""Partitions, compositions and constrained partition enumeration.

A partition is a weakly decreasing tuple of positive integers, a
composition is any ordered tuple of positive integers.  Classes of
partitions (all, distinct parts, odd parts, parts congruent to +-1
mod 4d, no ones, or a user predicate) restrict which parts may occur.

Enumeration yields partitions in decreasing lexicographic order using
O(n) working state, so streams for large n are never materialized.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

__all__ = [
    "Partition",
    "Composition",
    "ClassTag",
    "PartitionClass",
    "PartitionStream",
    "enumerate_partitions",
    "count_partitions",
    "frequency_vector",
    "parse_parts",
]


_SEP = re.compile(r"[,|]")


def parse_parts(text: str) -> tuple[int, ...]:
    """Parse ``3,2,1,1`` or ``3|2|1|1`` into a tuple of positive ints.

    The empty string (or only whitespace) is the empty tuple.
    """
    text = text.strip()
    if not text:
        return ()
    parts = []
    for tok in _SEP.split(text):
        tok = tok.strip()
        if not tok or not tok.isdigit():
            raise ValueError(f"bad part {tok!r} in {text!r}")
        value = int(tok)
        if value < 1:
            raise ValueError(f"parts must be positive, got {value} in {text!r}")
        parts.append(value)
    return tuple(parts)


@dataclass(frozen=True)
class Composition:
    """Ordered positive parts; order is significant."""

    parts: tuple[int, ...]
    weight: int = field(init=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weight", sum(parts))

    @classmethod
    def parse(cls, text: str) -> "Composition":
        return cls(parse_parts(text))

    @property
    def op_count(self) -> int:
        return sum(p & 1 for p in self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of positive integers.

    ``weight`` is the sum of the parts and ``op_count`` the number of
    odd parts; both are computed once at construction.
    """

    parts: tuple[int, ...]
    weight: int = field(init=False, compare=False)
    op_count: int = field(init=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weight", sum(parts))
        object.__setattr__(self, "op_count", sum(p & 1 for p in parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(parse_parts(text))

    def as_composition(self) -> Composition:
        return Composition(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))


class ClassTag(enum.Enum):
    ALL = "all"
    DISTINCT = "distinct"
    ODD_PARTS = "odd"
    ODD_MOD_FOUR_D = "odd-mod-4d"
    NO_ONES = "no-ones"
    PREDICATE = "predicate"


@dataclass(frozen=True)
class PartitionClass:
    """A set of partitions described by a per-part test.

    ``DISTINCT`` additionally forbids repeated parts.  ``NO_ONES`` may be
    combined with a part predicate, which is then applied to parts >= 2.
    """

    tag: ClassTag
    d: int = 1
    predicate: Optional[Callable[[int], bool]] = None
    name: str = ""

    def __post_init__(self):
        if self.tag is ClassTag.ODD_MOD_FOUR_D and self.d < 1:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.tag is ClassTag.PREDICATE and self.predicate is None:
            raise ValueError("PREDICATE class needs a predicate")

    @classmethod
    def all(cls) -> "PartitionClass":
        return cls(ClassTag.ALL)

    @classmethod
    def distinct(cls) -> "PartitionClass":
        return cls(ClassTag.DISTINCT)

    @classmethod
    def odd_parts(cls) -> "PartitionClass":
        return cls(ClassTag.ODD_PARTS)

    @classmethod
    def odd_mod_four_d(cls, d: int) -> "PartitionClass":
        return cls(ClassTag.ODD_MOD_FOUR_D, d=d)

    @classmethod
    def no_ones(cls, predicate: Optional[Callable[[int], bool]] = None) -> "PartitionClass":
        return cls(ClassTag.NO_ONES, predicate=predicate)

    @classmethod
    def where(cls, predicate: Callable[[int], bool], name: str = "") -> "PartitionClass":
        return cls(ClassTag.PREDICATE, predicate=predicate, name=name)

    @property
    def distinct_parts(self) -> bool:
        return self.tag is ClassTag.DISTINCT

    def accepts(self, part: int) -> bool:
        tag = self.tag
        if part < 1:
            return False
        if tag is ClassTag.ALL or tag is ClassTag.DISTINCT:
            return True
        if tag is ClassTag.ODD_PARTS:
            return part & 1 == 1
        if tag is ClassTag.ODD_MOD_FOUR_D:
            r = part % (4 * self.d)
            return r == 1 or r == 4 * self.d - 1
        if tag is ClassTag.NO_ONES:
            return part >= 2 and (self.predicate is None or bool(self.predicate(part)))
        return bool(self.predicate(part))

    def allowed_mask(self, n: int) -> bytes:
        """Byte mask of length n+1; entry p is 1 iff part p is admissible."""
        return bytes([0] + [1 if self.accepts(p) else 0 for p in range(1, n + 1)])

    def contains(self, parts: Sequence[int]) -> bool:
        if self.distinct_parts and len(set(parts)) != len(parts):
            return False
        return all(self.accepts(p) for p in parts)

    @property
    def label(self) -> str:
        if self.tag is ClassTag.ODD_MOD_FOUR_D:
            return f"O{self.d}"
        if self.tag is ClassTag.PREDICATE:
            return self.name or "predicate"
        return {
            ClassTag.ALL: "P",
            ClassTag.DISTINCT: "D",
            ClassTag.ODD_PARTS: "O",
            ClassTag.NO_ONES: "no-ones",
        }[self.tag]

    def __str__(self):
        return self.label


def _admissible_parts(n: int, cls: PartitionClass) -> list[int]:
    # descending list of admissible part sizes <= n
    return [p for p in range(n, 0, -1) if cls.accepts(p)]


def _iter_partitions(n: int, cls: PartitionClass) -> Iterator[Partition]:
    if n == 0:
        yield Partition(())
        return
    allowed = _admissible_parts(n, cls)
    if not allowed:
        return
    strict = cls.distinct_parts
    # stack of (remaining, index into `allowed` of next candidate); parts hold the prefix
    parts: list[int] = []
    idx: list[int] = []
    remaining = n
    i = 0
    while True:
        # extend greedily with the largest admissible part <= min(remaining, last)
        while remaining > 0:
            while i < len(allowed) and allowed[i] > remaining:
                i += 1
            if i == len(allowed):
                break
            parts.append(allowed[i])
            idx.append(i)
            remaining -= allowed[i]
            if strict:
                i += 1
        if remaining == 0:
            yield Partition(tuple(parts))
        # backtrack: replace the last part by the next smaller admissible one
        while parts:
            p = parts.pop()
            j = idx.pop()
            remaining += p
            if j + 1 < len(allowed):
                i = j + 1
                break
        else:
            return


class PartitionStream:
    """Restartable stream of the partitions of ``n`` in a class.

    Iterating twice produces the same sequence; each iteration keeps only
    the current partition and an index stack.
    """

    def __init__(self, n: int, cls: PartitionClass):
        if n < 0:
            raise ValueError(f"n must be nonnegative, got {n}")
        self.n = n
        self.cls = cls

    def __iter__(self) -> Iterator[Partition]:
        return _iter_partitions(self.n, self.cls)

    def __repr__(self):
        return f"PartitionStream(n={self.n}, cls={self.cls})"


def enumerate_partitions(n: int, cls: Optional[PartitionClass] = None) -> PartitionStream:
    """Every partition of ``n`` in ``cls``, in decreasing lexicographic order."""
    return PartitionStream(n, cls or PartitionClass.all())


def count_partitions(n: int, cls: Optional[PartitionClass] = None) -> int:
    """Number of partitions of ``n`` in ``cls`` by a coin-change recurrence."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    cls = cls or PartitionClass.all()
    ways = [1] + [0] * n
    for p in range(1, n + 1):
        if not cls.accepts(p):
            continue
        if cls.distinct_parts:
            for w in range(n, p - 1, -1):
                ways[w] += ways[w - p]
        else:
            for w in range(p, n + 1):
                ways[w] += ways[w - p]
    return ways[n]


def frequency_vector(lam: Partition | Sequence[int]) -> dict[int, int]:
    """Map part size -> multiplicity."""
    parts = lam.parts if isinstance(lam, Partition) else lam
    return dict(Counter(parts))
