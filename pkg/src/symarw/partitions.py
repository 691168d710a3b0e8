"""Integer partitions: the index set for every basis of the symmetric function ring.

Partitions are immutable tuples of weakly decreasing positive integers.  The
empty tuple is the unique partition of 0.  Enumeration order is reverse
lexicographic, e.g. ``[4], [3,1], [2,2], [2,1,1], [1,1,1,1]``.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence

DEFAULT_DEGREE_CAP = 12

_degree_cap = DEFAULT_DEGREE_CAP


class DegreeCapError(ValueError):
    """A weight exceeds the configured truncation degree."""


def get_degree_cap() -> int:
    return _degree_cap


def set_degree_cap(n: int) -> None:
    """Set the process-wide default truncation degree."""
    global _degree_cap
    if n < 0:
        raise ValueError("degree cap must be nonnegative")
    _degree_cap = int(n)


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``.  Anything else that is not already a
    partition is rejected; use :func:`from_parts` to sort arbitrary parts.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        if isinstance(parts, Partition):
            return parts
        parts = [int(x) for x in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for i, x in enumerate(parts):
            if x <= 0:
                raise ValueError(f"partition parts must be positive, got {parts}")
            if i and parts[i - 1] < x:
                raise ValueError(f"partition parts must be weakly decreasing, got {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return "Partition(%s)" % format_partition(self)

    def __str__(self) -> str:
        return format_partition(self)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))


def from_parts(parts: Iterable[int]) -> Partition:
    """Build a partition from parts in any order (zeros dropped)."""
    return Partition(sorted((int(x) for x in parts if x), reverse=True))


def weight(lam: Sequence[int]) -> int:
    return sum(lam)


def length(lam: Sequence[int]) -> int:
    return sum(1 for x in lam if x > 0)


@lru_cache(maxsize=4096)
def conjugate(lam: Sequence[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for x in lam if x > j) for j in range(lam[0]))


@lru_cache(maxsize=4096)
def z_of(lam: Sequence[int]) -> int:
    """Centralizer order prod_i i^{m_i} m_i! of a permutation of cycle type lam."""
    return prod(i ** m * factorial(m) for i, m in Counter(lam).items())


def n_of(lam: Sequence[int]) -> int:
    return sum(i * x for i, x in enumerate(lam))


def _check_box(lam: Sequence[int], i: int, j: int) -> None:
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"box ({i},{j}) is not in the diagram of {format_partition(lam)}")


def content(lam: Sequence[int], i: int, j: int) -> int:
    """Content j - i of box (i, j); rows and columns are 1-indexed."""
    _check_box(lam, i, j)
    return j - i


def hook(lam: Sequence[int], i: int, j: int) -> int:
    """Hook length lam_i + lam'_j - i - j + 1 of box (i, j), 1-indexed."""
    _check_box(lam, i, j)
    conj = conjugate(Partition(lam))
    return lam[i - 1] + conj[j - 1] - i - j + 1


def content_matrix(lam: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(content(lam, i, j) for j in range(1, row + 1))
                 for i, row in enumerate(lam, start=1))


def hook_matrix(lam: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(hook(lam, i, j) for j in range(1, row + 1))
                 for i, row in enumerate(lam, start=1))


def boxes(lam: Sequence[int]):
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> tuple[Partition, ...]:
    if n == 0:
        return (Partition(),)
    out = []
    for k in range(min(n, max_part), 0, -1):
        out.extend(Partition((k,) + rest) for rest in _partitions(n - k, k))
    return tuple(out)


def partitions_of(n: int, cap: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order.

    Raises DegreeCapError if n exceeds ``cap`` (the process default when None).
    """
    cap = _degree_cap if cap is None else cap
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds cap {cap}")
    return _partitions(n, n)


def partitions_up_to(n: int, cap: int | None = None) -> tuple[Partition, ...]:
    """Partitions of 0..n, grouped by weight, each group in reverse lex order."""
    out: list[Partition] = []
    for k in range(n + 1):
        out.extend(partitions_of(k, cap))
    return tuple(out)


def sort_key(lam: Sequence[int]):
    """Canonical ordering key: weight ascending, then reverse lexicographic."""
    return (sum(lam), tuple(-x for x in lam) + (0,))


def union(a: Sequence[int], b: Sequence[int]) -> Partition:
    """Multiset union of parts (the index of p_a * p_b)."""
    return Partition(sorted(tuple(a) + tuple(b), reverse=True))


def difference(a: Sequence[int], b: Sequence[int]) -> Partition | None:
    """Multiset difference a minus b, or None if b is not contained in a."""
    left = Counter(a)
    left.subtract(Counter(b))
    if any(v < 0 for v in left.values()):
        return None
    return from_parts(left.elements())


def scale(lam: Sequence[int], k: int) -> Partition:
    return Partition(k * x for x in lam)


_TEXT_RE = re.compile(r"^\s*\[?\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse the text form ``"[4,2,2,1]"`` (brackets optional, ``"[]"`` is empty)."""
    m = _TEXT_RE.match(text)
    if not m:
        raise ValueError(f"not a partition: {text!r}")
    body = m.group(1).strip()
    if not body:
        return Partition()
    return Partition(int(x) for x in body.split(","))


def format_partition(lam: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in lam) + "]"
