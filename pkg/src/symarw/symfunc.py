"""The ring of symmetric functions, truncated at a total degree.

Elements are sparse exact-rational combinations of basis functions indexed by
partitions, tagged with one of the bases ``p`` (power sums), ``s`` (Schur),
``h`` (complete), ``e`` (elementary) or ``m`` (monomial).  All arithmetic is
done in the power-sum basis, where the three products are simplest:

* outer product: ``p_a p_b = p_{a u b}``;
* inner (Kronecker) product: ``p_a * p_b = z_a p_a`` if ``a == b`` else 0;
* plethysm: ``p_n[B]`` multiplies every power-sum index of B by n.

Plethysm passes rational scalars through unchanged, ``p_n[c B] = c p_n[B]``.
The other common convention (raising parameters to the n-th power) is not
used anywhere in this package.

Terms above ``degree_cap`` are dropped by the products; the result then
carries ``truncated=True``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import cache
from .characters import char_table
from .partitions import (
    DegreeCapError,
    Partition,
    conjugate,
    difference,
    format_partition,
    get_degree_cap,
    partitions_of,
    partitions_up_to,
    scale,
    sort_key,
    union,
    z_of,
)

BASES = ("p", "s", "h", "e", "m")


# ---------------------------------------------------------------------------
# transition matrices, per degree

def _sign(lam: Sequence[int]) -> int:
    return -1 if (sum(lam) - len(lam)) % 2 else 1


def _mul_p(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for lam, x in a.items():
        for mu, y in b.items():
            key = union(lam, mu)
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _count_fillings(parts: tuple, targets: tuple) -> int:
    if not parts:
        return 1 if not any(targets) else 0
    first, rest = parts[0], parts[1:]
    total = 0
    for j, t in enumerate(targets):
        if t >= first:
            total += _count_fillings(rest, targets[:j] + (t - first,) + targets[j + 1:])
    return total


def _invert(rows: dict, index: Sequence[Partition]) -> dict:
    """Inverse of the square matrix rows[i][j] (Gauss-Jordan over Q).

    If b_i = sum_j rows[i][j] p_j, the result inv satisfies
    p_j = sum_i inv[j][i] b_i.
    """
    n = len(index)
    pos = {lam: k for k, lam in enumerate(index)}
    a = [[Fraction(0)] * n + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for lam, row in rows.items():
        for mu, v in row.items():
            a[pos[lam]][pos[mu]] = Fraction(v)
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        scale_by = 1 / a[col][col]
        a[col] = [x * scale_by for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return {index[j]: {index[i]: a[j][n + i] for i in range(n) if a[j][n + i] != 0}
            for j in range(n)}


@lru_cache(maxsize=None)
def _to_p(basis: str, n: int) -> dict:
    """_to_p(b, n)[lam][mu]: coefficient of p_mu in b_lam, for lam, mu |- n."""
    parts = partitions_of(n, cap=n)
    if basis == "p":
        return {lam: {lam: Fraction(1)} for lam in parts}
    if basis == "s":
        table = char_table(n, cap=n)
        return {lam: {mu: Fraction(table[lam, mu], z_of(mu)) for mu in parts if table[lam, mu]}
                for lam in parts}
    if basis in ("h", "e"):
        out = {}
        for lam in parts:
            acc = {Partition(): Fraction(1)}
            for k in lam:
                gen = {mu: Fraction(_sign(mu) if basis == "e" else 1, z_of(mu))
                       for mu in partitions_of(k, cap=k)}
                acc = _mul_p(acc, gen)
            out[lam] = acc
        return out
    if basis == "m":
        return _invert(_from_p("m", n), parts)
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def _from_p(basis: str, n: int) -> dict:
    """_from_p(b, n)[mu][lam]: coefficient of b_lam in p_mu."""
    parts = partitions_of(n, cap=n)
    if basis == "p":
        return {mu: {mu: Fraction(1)} for mu in parts}
    if basis == "s":
        table = char_table(n, cap=n)
        return {mu: {lam: Fraction(table[lam, mu]) for lam in parts if table[lam, mu]}
                for mu in parts}
    if basis == "m":
        out = {}
        for lam in parts:
            row = {}
            for mu in parts:
                c = _count_fillings(tuple(lam), tuple(mu))
                if c:
                    row[mu] = Fraction(c)
            out[lam] = row
        return out
    if basis in ("h", "e"):
        return _invert(_to_p(basis, n), parts)
    raise ValueError(f"unknown basis {basis!r}")


def _convert(terms: Mapping, matrices) -> dict:
    out: dict = {}
    for lam, c in terms.items():
        for mu, v in matrices(sum(lam))[lam].items():
            out[mu] = out.get(mu, 0) + c * v
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# the element type

def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'a/b' string")
    return Fraction(x)


class SymFunc:
    """A symmetric function truncated at ``degree_cap``.

    ``terms`` maps partitions to rational coefficients in ``basis``.  Values
    are immutable; every operation returns a new element.
    """

    __slots__ = ("basis", "terms", "degree_cap", "truncated", "_p")

    def __init__(self, terms: Mapping | None = None, basis: str = "p",
                 degree_cap: int | None = None, truncated: bool = False):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
        cap = get_degree_cap() if degree_cap is None else int(degree_cap)
        clean: dict = {}
        for lam, c in (terms or {}).items():
            lam = Partition(lam)
            if sum(lam) > cap:
                raise DegreeCapError(f"term {format_partition(lam)} exceeds degree cap {cap}")
            clean[lam] = clean.get(lam, 0) + _rational(c)
        self.terms = {k: v for k, v in clean.items() if v}
        self.basis = basis
        self.degree_cap = cap
        self.truncated = bool(truncated)
        self._p = self.terms if basis == "p" else None

    # construction helpers -------------------------------------------------
    @classmethod
    def _from_p_terms(cls, pterms: Mapping, basis: str, cap: int, truncated: bool = False):
        if basis == "p":
            return cls(pterms, "p", cap, truncated)
        return cls(_convert(pterms, lambda n: _from_p(basis, n)), basis, cap, truncated)

    @property
    def p_terms(self) -> dict:
        if self._p is None:
            self._p = _convert(self.terms, lambda n: _to_p(self.basis, n))
        return self._p

    def to_basis(self, target: str) -> "SymFunc":
        if target == self.basis:
            return self
        if target not in BASES:
            raise ValueError(f"unknown basis {target!r}")
        return SymFunc._from_p_terms(self.p_terms, target, self.degree_cap, self.truncated)

    def with_cap(self, cap: int) -> "SymFunc":
        """Same element under a different cap (terms above ``cap`` dropped)."""
        kept = {k: v for k, v in self.terms.items() if sum(k) <= cap}
        return SymFunc(kept, self.basis, cap, self.truncated or len(kept) < len(self.terms))

    # inspection -----------------------------------------------------------
    def items(self):
        """(partition, coefficient) pairs in canonical order."""
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0]))

    def coefficient(self, lam: Sequence[int]) -> Fraction:
        return self.terms.get(Partition(lam), Fraction(0))

    @property
    def degree(self) -> int:
        """Largest weight present; -1 for the zero element."""
        return max((sum(k) for k in self.terms), default=-1)

    @property
    def min_degree(self) -> int:
        return min((sum(k) for k in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous(self, n: int) -> "SymFunc":
        return SymFunc({k: v for k, v in self.terms.items() if sum(k) == n},
                       self.basis, self.degree_cap, self.truncated)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.terms.get(Partition(), Fraction(0))

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "SymFunc":
        if isinstance(other, SymFunc):
            return other
        return SymFunc({(): _rational(other)}, self.basis, self.degree_cap)

    def __add__(self, other):
        other = self._coerce(other)
        cap = min(self.degree_cap, other.degree_cap)
        out = dict(self.with_cap(cap).terms)
        for k, v in other.to_basis(self.basis).terms.items():
            if sum(k) <= cap:
                out[k] = out.get(k, 0) + v
        return SymFunc(out, self.basis, cap, self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc({k: -v for k, v in self.terms.items()}, self.basis,
                       self.degree_cap, self.truncated)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return outer_product(self, other)
        c = _rational(other)
        return SymFunc({k: c * v for k, v in self.terms.items()}, self.basis,
                       self.degree_cap, self.truncated)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (1 / _rational(other))

    def __pow__(self, k: int):
        out = one(self.degree_cap, self.basis)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SymFunc):
            return self.p_terms == other.p_terms
        if isinstance(other, (int, Fraction)):
            return self.p_terms == ({Partition(): Fraction(other)} if other else {})
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"SymFunc({format_terms(self)!r}, cap={self.degree_cap})"

    def __str__(self):
        return format_terms(self)


def format_coefficient_term(c: Fraction, label: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    body = label if mag == 1 else f"{mag}*{label}"
    if first:
        return body if sign == "+" else "-" + body
    return f" {sign} {body}"


def format_terms(f: SymFunc) -> str:
    """Canonical text form, e.g. ``3/2*p[2,1] + s[3] - h[1,1]``."""
    items = f.items()
    if not items:
        return "0"
    return "".join(format_coefficient_term(c, f.basis + format_partition(lam), i == 0)
                   for i, (lam, c) in enumerate(items))


# ---------------------------------------------------------------------------
# constructors

def basis_element(basis: str, parts: Iterable[int] = (), degree_cap: int | None = None) -> SymFunc:
    return SymFunc({Partition(parts): 1}, basis, degree_cap)


def schur(parts: Iterable[int] = (), degree_cap: int | None = None) -> SymFunc:
    return basis_element("s", parts, degree_cap)


def power_sum(parts: Iterable[int] = (), degree_cap: int | None = None) -> SymFunc:
    return basis_element("p", parts, degree_cap)


def complete(parts: Iterable[int] = (), degree_cap: int | None = None) -> SymFunc:
    return basis_element("h", parts, degree_cap)


def elementary(parts: Iterable[int] = (), degree_cap: int | None = None) -> SymFunc:
    return basis_element("e", parts, degree_cap)


def monomial(parts: Iterable[int] = (), degree_cap: int | None = None) -> SymFunc:
    return basis_element("m", parts, degree_cap)


def one(degree_cap: int | None = None, basis: str = "p") -> SymFunc:
    return SymFunc({(): 1}, basis, degree_cap)


def zero(degree_cap: int | None = None, basis: str = "p") -> SymFunc:
    return SymFunc({}, basis, degree_cap)


# ---------------------------------------------------------------------------
# operations

def to_basis(f: SymFunc, target: str) -> SymFunc:
    return f.to_basis(target)


def outer_product(f: SymFunc, g: SymFunc) -> SymFunc:
    """Pointwise product; multiplicative on power-sum indices."""
    cap = min(f.degree_cap, g.degree_cap)
    out: dict = {}
    dropped = False
    for lam, x in f.p_terms.items():
        wl = sum(lam)
        for mu, y in g.p_terms.items():
            if wl + sum(mu) > cap:
                dropped = True
                continue
            key = union(lam, mu)
            out[key] = out.get(key, 0) + x * y
    return SymFunc._from_p_terms(out, f.basis, cap, f.truncated or g.truncated or dropped)


def inner_product_op(f: SymFunc, g: SymFunc) -> SymFunc:
    """Kronecker product: diagonal in the p basis, p_a * p_a = z_a p_a."""
    cap = min(f.degree_cap, g.degree_cap)
    gp = g.p_terms
    out = {lam: x * gp[lam] * z_of(lam) for lam, x in f.p_terms.items() if lam in gp}
    return SymFunc._from_p_terms(out, f.basis, cap, f.truncated or g.truncated)


def hall_inner(f: SymFunc, g: SymFunc) -> Fraction:
    """Hall scalar product: <s_a|s_b> = delta, <p_a|p_b> = z_a delta."""
    if f.basis == "s" and g.basis == "s":
        return sum((c * g.terms[lam] for lam, c in f.terms.items() if lam in g.terms), Fraction(0))
    gp = g.p_terms
    return sum((c * gp[lam] * z_of(lam) for lam, c in f.p_terms.items() if lam in gp), Fraction(0))


def _pn_of(n: int, bp: Mapping, cap: int) -> tuple[dict, bool]:
    out = {}
    dropped = False
    for mu, c in bp.items():
        if n * sum(mu) > cap:
            dropped = True
            continue
        out[scale(mu, n)] = c
    return out, dropped


def plethysm(a: SymFunc, b: SymFunc) -> SymFunc:
    """Composition a[b]; b must have zero constant term."""
    if b.constant_term() != 0:
        raise ValueError("plethysm a[b] requires b to have zero constant term")
    cap = min(a.degree_cap, b.degree_cap)
    bp = b.p_terms
    dropped = False
    inner: dict[int, dict] = {}

    def pn(n: int) -> dict:
        nonlocal dropped
        if n not in inner:
            inner[n], d = _pn_of(n, bp, cap)
            dropped = dropped or d
        return inner[n]

    out: dict = {}
    for lam, x in a.p_terms.items():
        acc = {Partition(): x}
        for k in lam:
            nxt: dict = {}
            for mu, y in acc.items():
                wm = sum(mu)
                for nu, w in pn(k).items():
                    if wm + sum(nu) > cap:
                        dropped = True
                        continue
                    key = union(mu, nu)
                    nxt[key] = nxt.get(key, 0) + y * w
            acc = nxt
            if not acc:
                break
        for mu, y in acc.items():
            out[mu] = out.get(mu, 0) + y
    return SymFunc._from_p_terms(out, a.basis, cap, a.truncated or b.truncated or dropped)


def perp(g: SymFunc, f: SymFunc) -> SymFunc:
    """g-perp applied to f: the adjoint of multiplication by g under the Hall pairing."""
    out: dict = {}
    for rho, x in g.p_terms.items():
        for lam, y in f.p_terms.items():
            rest = difference(lam, rho)
            if rest is None:
                continue
            out[rest] = out.get(rest, 0) + x * y * Fraction(z_of(lam), z_of(rest))
    return SymFunc._from_p_terms(out, f.basis, min(f.degree_cap, g.degree_cap),
                                 f.truncated or g.truncated)


def skew(lam: Sequence[int], mu: Sequence[int], degree_cap: int | None = None) -> SymFunc:
    """Skew Schur function s_{lam/mu} in the s basis."""
    return perp(schur(mu, degree_cap), schur(lam, degree_cap)).to_basis("s")


def antipode(f: SymFunc) -> SymFunc:
    """S(s_lam) = (-1)^{|lam|} s_{lam'}, extended linearly."""
    fs = f.to_basis("s")
    out = {conjugate(lam): (-c if sum(lam) % 2 else c) for lam, c in fs.terms.items()}
    return SymFunc(out, "s", f.degree_cap, f.truncated).to_basis(f.basis)


def counit(f: SymFunc) -> Fraction:
    return f.constant_term()


def inner_counit(f: SymFunc) -> Fraction:
    """<M | f>: the sum of the power-sum coefficients of f."""
    return sum(f.p_terms.values(), Fraction(0))


# ---------------------------------------------------------------------------
# structure coefficients

def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer coefficient, got {x}")
    return int(x)


_coef_tables: dict[tuple[str, int], dict] = {}
_coef_lock = threading.Lock()


@lru_cache(maxsize=None)
def _lr(lam: Partition, mu: Partition, nu: Partition) -> int:
    cap = sum(lam)
    return _as_int(hall_inner(outer_product(schur(mu, cap), schur(nu, cap)), schur(lam, cap)))


@lru_cache(maxsize=None)
def _kron(lam: Partition, mu: Partition, nu: Partition) -> int:
    cap = sum(lam)
    return _as_int(hall_inner(inner_product_op(schur(mu, cap), schur(nu, cap)), schur(lam, cap)))


@lru_cache(maxsize=None)
def _pleth(lam: Partition, mu: Partition, nu: Partition) -> int:
    cap = sum(lam)
    return _as_int(hall_inner(plethysm(schur(mu, cap), schur(nu, cap)), schur(lam, cap)))


def _check_cap(n: int, cap: int | None) -> None:
    cap = get_degree_cap() if cap is None else cap
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds cap {cap}")


def _lookup(kind: str, lam, mu, nu):
    table = cached_coefficient_table(kind, sum(lam))
    if table is None:
        return None
    return table.get(lam, {}).get((mu, nu), 0)


def lr_coefficient(lam, mu, nu, degree_cap: int | None = None) -> int:
    """c^lam_{mu,nu} = <s_mu s_nu | s_lam>; zero unless |lam| = |mu| + |nu|."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    _check_cap(sum(lam), degree_cap)
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    hit = _lookup("outer", lam, mu, nu)
    return _lr(lam, mu, nu) if hit is None else hit


def kronecker_coefficient(lam, mu, nu, degree_cap: int | None = None) -> int:
    """g^lam_{mu,nu} = <s_mu * s_nu | s_lam>; zero unless all weights agree."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    _check_cap(sum(lam), degree_cap)
    if not sum(lam) == sum(mu) == sum(nu):
        return 0
    hit = _lookup("inner", lam, mu, nu)
    return _kron(lam, mu, nu) if hit is None else hit


def plethysm_coefficient(lam, mu, nu, degree_cap: int | None = None) -> int:
    """p^lam_{mu,nu} = <s_mu[s_nu] | s_lam>; zero unless |lam| = |mu||nu|."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if not nu:
        raise ValueError("plethysm coefficients need |nu| >= 1")
    _check_cap(sum(mu) * sum(nu), degree_cap)
    if sum(lam) != sum(mu) * sum(nu):
        return 0
    hit = _lookup("pleth", lam, mu, nu)
    return _pleth(lam, mu, nu) if hit is None else hit


def _factor_pairs(kind: str, n: int):
    if kind == "outer":
        for a in range(n + 1):
            for mu in partitions_of(a, cap=a):
                for nu in partitions_of(n - a, cap=n - a):
                    yield mu, nu
    elif kind == "inner":
        for mu in partitions_of(n, cap=n):
            for nu in partitions_of(n, cap=n):
                yield mu, nu
    elif kind == "pleth":
        for a in range(1, n + 1):
            if n % a:
                continue
            for mu in partitions_of(a, cap=a):
                for nu in partitions_of(n // a, cap=n // a):
                    yield mu, nu
    else:
        raise ValueError(f"unknown coefficient kind {kind!r}")


_PRODUCTS = {"outer": outer_product, "inner": inner_product_op, "pleth": plethysm}


def _compute_coefficient_table(kind: str, n: int) -> dict:
    table: dict = {lam: {} for lam in partitions_of(n, cap=n)}
    if kind == "inner" and n == 0:
        table[Partition()][Partition(), Partition()] = 1
        return table
    product = _PRODUCTS[kind]
    for mu, nu in _factor_pairs(kind, n):
        result = product(schur(mu, n), schur(nu, n)).to_basis("s")
        for lam, c in result.terms.items():
            table[lam][mu, nu] = _as_int(c)
    cache.STATS[f"{kind}_tables_computed"] += 1
    return table


def _table_rows(table: dict):
    for lam in sorted(table, key=sort_key):
        for (mu, nu) in sorted(table[lam], key=lambda k: (sort_key(k[0]), sort_key(k[1]))):
            yield (lam, mu, nu), table[lam][mu, nu]


def cached_coefficient_table(kind: str, n: int) -> dict | None:
    """The (kind, n) table if it is in memory or on disk; never computes."""
    table = _coef_tables.get((kind, n))
    if table is not None:
        return table
    rows = cache.read_table(kind, n)
    if rows is None:
        return None
    table = {lam: {} for lam in partitions_of(n, cap=n)}
    for (lam, mu, nu), v in rows:
        table[lam][mu, nu] = v
    with _coef_lock:
        _coef_tables.setdefault((kind, n), table)
    return _coef_tables[kind, n]


def coefficient_table(kind: str, n: int) -> dict:
    """All nonzero structure constants of degree n, table[lam][(mu, nu)].

    ``kind`` is ``outer`` (Littlewood-Richardson), ``inner`` (Kronecker) or
    ``pleth`` (plethysm, |mu||nu| = n with |nu| >= 1).
    """
    table = cached_coefficient_table(kind, n)
    if table is not None:
        return table
    with _coef_lock:
        table = _coef_tables.get((kind, n))
        if table is None:
            table = _compute_coefficient_table(kind, n)
            _coef_tables[kind, n] = table
    if cache.cache_dir() is not None:
        save_coefficient_table(kind, n)
    return table


def save_coefficient_table(kind: str, n: int, directory=None):
    return cache.write_table(kind, n, _table_rows(coefficient_table(kind, n)), directory)


def clear_coefficient_memo() -> None:
    with _coef_lock:
        _coef_tables.clear()


# ---------------------------------------------------------------------------
# generating series

SERIES_KINDS = ("M", "L", "M_c", "M_dc")


def coordinate_tuple(values, cap: int) -> tuple[Fraction, ...]:
    """Normalize a coordinate sequence (list from index 1, or {n: value}) to length cap."""
    out = [Fraction(0)] * cap
    if values is None:
        return tuple(out)
    items = values.items() if isinstance(values, Mapping) else enumerate(values, start=1)
    for n, v in items:
        n = int(n)
        if not 1 <= n:
            raise ValueError(f"coordinate index {n} out of range")
        v = _rational(v)
        if n > cap:
            if v:
                raise DegreeCapError(f"coordinate index {n} exceeds degree cap {cap}")
            continue
        out[n - 1] = v
    return tuple(out)


@dataclass(frozen=True)
class SeriesSpec:
    """A generating series: ``M``, ``L``, ``M_c`` or ``M_dc``.

    ``c`` and ``d`` are coordinate sequences indexed from 1.
    """

    kind: str
    c: tuple = ()
    d: tuple = ()
    degree_cap: int | None = None

    def __post_init__(self):
        if self.kind not in SERIES_KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        cap = get_degree_cap() if self.degree_cap is None else self.degree_cap
        object.__setattr__(self, "degree_cap", cap)
        object.__setattr__(self, "c", coordinate_tuple(self.c, cap))
        object.__setattr__(self, "d", coordinate_tuple(self.d, cap))


def coordinate_monomial(c: Sequence[Fraction], lam: Sequence[int]) -> Fraction:
    """c_lam = c_{lam_1} c_{lam_2} ... for coordinates stored from index 1."""
    out = Fraction(1)
    for k in lam:
        out *= c[k - 1] if k <= len(c) else 0
        if not out:
            break
    return out


def exp_series(g: SymFunc) -> SymFunc:
    """exp(g) truncated at g's cap; g must have zero constant term."""
    if g.constant_term() != 0:
        raise ValueError("exp_series needs zero constant term")
    g = g.to_basis("p")
    cap = g.degree_cap
    total = one(cap)
    power = one(cap)
    for j in range(1, cap + 1):
        power = outer_product(power, g) * Fraction(1, j)
        if power.is_zero():
            break
        total = total + power
    return SymFunc(total.terms, "p", cap)


def expand_series(spec: SeriesSpec) -> SymFunc:
    """Expand a generating series in the p basis up to its degree cap."""
    cap = spec.degree_cap
    if spec.kind in ("M", "L", "M_c"):
        out = {}
        for lam in partitions_up_to(cap, cap):
            if spec.kind == "M":
                coef = Fraction(1)
            elif spec.kind == "L":
                coef = Fraction((-1) ** len(lam))
            else:
                coef = coordinate_monomial(spec.c, lam)
            if coef:
                out[lam] = coef / z_of(lam)
        return SymFunc(out, "p", cap)
    exponent = {}
    for n in range(1, cap + 1):
        if spec.c[n - 1]:
            exponent[(n,)] = spec.c[n - 1] / n
    for k in range(1, cap // 2 + 1):
        if spec.d[k - 1]:
            exponent[(k, k)] = spec.d[k - 1] ** 2 / k
    return exp_series(SymFunc(exponent, "p", cap))


def elementary_from_L(series: SymFunc, m: int) -> SymFunc:
    """Read e_m off an expanded L series (whose degree-m part is (-1)^m e_m)."""
    return (series.homogeneous(m) * (-1) ** m).to_basis("e")

