"""Irreducible characters of the symmetric group via Murnaghan-Nakayama."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import cache
from .partitions import Partition, partitions_of


def _beta_set(lam: Sequence[int], length: int) -> tuple[int, ...]:
    return tuple(x + length - 1 - i for i, x in enumerate(tuple(lam) + (0,) * (length - len(lam))))


def _from_beta(beta: Sequence[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    n = len(beta)
    return Partition(b - (n - 1 - i) for i, b in enumerate(beta))


def border_strips(lam: Sequence[int], k: int):
    """Yield (height, remainder) for every border strip of size k in lam.

    Works on the beta-set: removing a strip of size k slides one bead from
    b to b - k into an empty slot; the height is the number of beads jumped.
    """
    beta = _beta_set(lam, len(lam))
    occupied = set(beta)
    for b in beta:
        target = b - k
        if target < 0 or target in occupied:
            continue
        height = sum(1 for x in beta if target < x < b)
        yield height, _from_beta([target if x == b else x for x in beta])


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], Partition(mu[1:])
    total = 0
    for height, smaller in border_strips(lam, k):
        total += (-1) ** height * _mn(smaller, rest)
    return total


def murnaghan_nakayama(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi^lam at cycle type mu by direct recursion (no table lookup).

    Strips are removed for the largest part of mu first.
    """
    lam, mu = Partition(lam), Partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"weight mismatch: |{lam}| != |{mu}|")
    return _mn(lam, mu)


@dataclass(frozen=True)
class CharacterTable:
    degree: int
    values: dict = field(repr=False)

    def __getitem__(self, key: tuple[Sequence[int], Sequence[int]]) -> int:
        lam, mu = key
        return self.values[Partition(lam), Partition(mu)]

    @property
    def partitions(self) -> tuple[Partition, ...]:
        return partitions_of(self.degree, cap=self.degree)

    def row(self, lam) -> dict[Partition, int]:
        lam = Partition(lam)
        return {mu: self.values[lam, mu] for mu in self.partitions}

    def rows(self):
        """(lam, mu, value) in canonical order."""
        for lam in self.partitions:
            for mu in self.partitions:
                yield lam, mu, self.values[lam, mu]


_tables: dict[int, CharacterTable] = {}
_lock = threading.Lock()


def _compute_table(n: int) -> CharacterTable:
    parts = partitions_of(n, cap=n)
    cache.STATS["chars_tables_computed"] += 1
    return CharacterTable(n, {(lam, mu): _mn(lam, mu) for lam in parts for mu in parts})


def _load_table(n: int) -> CharacterTable | None:
    rows = cache.read_table("chars", n)
    if rows is None:
        return None
    values = {(lam, mu): v for (lam, mu), v in rows}
    parts = partitions_of(n, cap=n)
    if len(values) != len(parts) ** 2:
        return None
    return CharacterTable(n, values)


def char_table(n: int, cap: int | None = None) -> CharacterTable:
    """Complete character table for S_n, memoized and optionally disk-backed."""
    partitions_of(n, cap)  # enforces the degree cap
    table = _tables.get(n)
    if table is not None:
        return table
    with _lock:
        table = _tables.get(n)
        if table is None:
            table = _load_table(n)
            if table is None:
                table = _compute_table(n)
                if cache.cache_dir() is not None:
                    save_table(table)
            _tables[n] = table
    return table


def save_table(table: CharacterTable, directory=None):
    return cache.write_table("chars", table.degree,
                             (((lam, mu), v) for lam, mu, v in table.rows()), directory)


def clear_memo() -> None:
    """Forget in-process tables (the recursion memo is kept)."""
    with _lock:
        _tables.clear()


def character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi^lam_mu, the irreducible S_n character lam at cycle type mu."""
    lam, mu = Partition(lam), Partition(mu)
    n = sum(lam)
    if n != sum(mu):
        raise ValueError(f"weight mismatch: |{lam}| != |{mu}|")
    return char_table(n, cap=max(n, 0))[lam, mu]
