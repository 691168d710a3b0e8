"""Coproducts dual to the outer, inner and plethysm products.

Coproducts land in the tensor square, represented by :class:`Tensor2`.

* outer:  Delta p_n = p_n (x) 1 + 1 (x) p_n, extended multiplicatively;
* inner:  delta p_lam = p_lam (x) p_lam;
* plethysm: nabla s_lam = sum <s_lam | s_mu[s_nu]> s_mu (x) s_nu.

The first two are computed in p (x) p.  The plethysm coproduct is read off
the plethysm coefficient tables in s (x) s: plethysm is not linear in its
inner argument, so it has no termwise closed form in the power sums.  Being
dual to a map that is nonlinear in one slot, nabla is coassociative only in
low degree; the first failure is at degree 8 (e.g. s_(6,2)).
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb, prod
from typing import Mapping

from .partitions import (
    Partition,
    format_partition,
    from_parts,
    get_degree_cap,
    sort_key,
    union,
    z_of,
)
from .symfunc import (
    BASES,
    coefficient_table,
    SymFunc,
    _from_p,
    _to_p,
    hall_inner,
    inner_product_op,
    outer_product,
    plethysm,
)

COPRODUCT_KINDS = ("outer", "inner", "pleth")


class Tensor2:
    """Sparse element of the tensor square, terms[(left, right)] -> rational."""

    __slots__ = ("terms", "basis", "degree_cap")

    def __init__(self, terms: Mapping | None = None, basis: tuple[str, str] = ("p", "p"),
                 degree_cap: int | None = None):
        if basis[0] not in BASES or basis[1] not in BASES:
            raise ValueError(f"unknown basis pair {basis!r}")
        cap = get_degree_cap() if degree_cap is None else degree_cap
        clean: dict = {}
        for (a, b), c in (terms or {}).items():
            a, b = Partition(a), Partition(b)
            if sum(a) > cap or sum(b) > cap:
                raise ValueError(f"tensor leg exceeds degree cap {cap}")
            clean[a, b] = clean.get((a, b), 0) + Fraction(c)
        self.terms = {k: v for k, v in clean.items() if v}
        self.basis = tuple(basis)
        self.degree_cap = cap

    def to_basis(self, basis: tuple[str, str]) -> "Tensor2":
        if tuple(basis) == self.basis:
            return self
        terms = self.terms
        if self.basis != ("p", "p"):
            terms = _convert_legs(terms, lambda n: _to_p(self.basis[0], n),
                                  lambda n: _to_p(self.basis[1], n))
        if tuple(basis) != ("p", "p"):
            terms = _convert_legs(terms, lambda n: _from_p(basis[0], n),
                                  lambda n: _from_p(basis[1], n))
        return Tensor2(terms, basis, self.degree_cap)

    @property
    def p_terms(self) -> dict:
        return self.to_basis(("p", "p")).terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (sort_key(kv[0][0]), sort_key(kv[0][1])))

    def __add__(self, other: "Tensor2") -> "Tensor2":
        out = dict(self.p_terms)
        for k, v in other.p_terms.items():
            out[k] = out.get(k, 0) + v
        return Tensor2(out, ("p", "p"), min(self.degree_cap, other.degree_cap)).to_basis(self.basis)

    def __mul__(self, other):
        """Componentwise outer product, or scalar multiple."""
        if isinstance(other, Tensor2):
            cap = min(self.degree_cap, other.degree_cap)
            out: dict = {}
            for (a, b), x in self.p_terms.items():
                for (c, d), y in other.p_terms.items():
                    if sum(a) + sum(c) > cap or sum(b) + sum(d) > cap:
                        continue
                    key = (union(a, c), union(b, d))
                    out[key] = out.get(key, 0) + x * y
            return Tensor2(out, ("p", "p"), cap).to_basis(self.basis)
        c = Fraction(other)
        return Tensor2({k: c * v for k, v in self.terms.items()}, self.basis, self.degree_cap)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Tensor2):
            return self.p_terms == other.p_terms
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"Tensor2({format_tensor(self)!r})"

    def __str__(self):
        return format_tensor(self)


def _convert_legs(terms: Mapping, left, right) -> dict:
    out: dict = {}
    for (a, b), c in terms.items():
        for a2, x in left(sum(a))[a].items():
            for b2, y in right(sum(b))[b].items():
                out[a2, b2] = out.get((a2, b2), 0) + c * x * y
    return {k: v for k, v in out.items() if v}


def format_tensor(t: Tensor2, basis: tuple[str, str] = ("s", "s")) -> str:
    """Render as ``coeff * s[mu] (x) s[nu]`` terms joined by +/-."""
    t = t.to_basis(basis)
    items = t.items()
    if not items:
        return "0"
    chunks = []
    for i, ((a, b), c) in enumerate(items):
        body = f"{abs(c)} * {basis[0]}{format_partition(a)} (x) {basis[1]}{format_partition(b)}"
        if i == 0:
            chunks.append(body if c > 0 else "-" + body)
        else:
            chunks.append((" + " if c > 0 else " - ") + body)
    return "".join(chunks)


def tensor(f: SymFunc, g: SymFunc) -> Tensor2:
    """Pure tensor f (x) g."""
    cap = min(f.degree_cap, g.degree_cap)
    return Tensor2({(a, b): x * y for a, x in f.p_terms.items() for b, y in g.p_terms.items()},
                   ("p", "p"), cap)


# ---------------------------------------------------------------------------
# coproducts

def _outer_cop_p(lam: Partition) -> dict:
    mult = Counter(lam)
    parts = sorted(mult)
    out = {}

    def rec(i, left):
        if i == len(parts):
            a = from_parts(left)
            b = from_parts((Counter(lam) - Counter(left)).elements())
            coef = prod(comb(mult[k], Counter(left)[k]) for k in parts)
            out[a, b] = Fraction(coef)
            return
        k = parts[i]
        for take in range(mult[k] + 1):
            rec(i + 1, left + [k] * take)

    rec(0, [])
    return out


def outer_coproduct(f: SymFunc) -> Tensor2:
    """Delta f; power sums are primitive."""
    out: dict = {}
    for lam, c in f.p_terms.items():
        for k, v in _outer_cop_p(lam).items():
            out[k] = out.get(k, 0) + c * v
    return Tensor2(out, ("p", "p"), f.degree_cap)


def inner_coproduct(f: SymFunc) -> Tensor2:
    """delta f; power sums are group-like."""
    return Tensor2({(lam, lam): c for lam, c in f.p_terms.items()}, ("p", "p"), f.degree_cap)


def plethysm_coproduct(f: SymFunc) -> Tensor2:
    """nabla f, defined on elements with zero constant term."""
    if f.constant_term() != 0:
        raise ValueError("the plethysm coproduct is only defined on the augmentation ideal")
    out: dict = {}
    for lam, c in f.to_basis("s").terms.items():
        for key, v in coefficient_table("pleth", sum(lam))[lam].items():
            out[key] = out.get(key, 0) + c * v
    return Tensor2(out, ("s", "s"), f.degree_cap)


COPRODUCTS = {"outer": outer_coproduct, "inner": inner_coproduct, "pleth": plethysm_coproduct}


def coproduct(kind: str, f: SymFunc) -> Tensor2:
    try:
        return COPRODUCTS[kind](f)
    except KeyError:
        raise ValueError(f"unknown coproduct kind {kind!r}; expected one of {COPRODUCT_KINDS}")


# ---------------------------------------------------------------------------
# pairings and tensor maps

def _leg(partition: Partition, cap: int) -> SymFunc:
    return SymFunc({partition: 1}, "p", cap)


def pair_left(phi: SymFunc, t: Tensor2) -> SymFunc:
    """sum <phi | t_(1)> t_(2)."""
    pp = phi.p_terms
    out: dict = {}
    for (a, b), c in t.p_terms.items():
        if a in pp:
            out[b] = out.get(b, 0) + c * pp[a] * z_of(a)
    return SymFunc._from_p_terms(out, phi.basis, min(phi.degree_cap, t.degree_cap))


def pair_right(phi: SymFunc, t: Tensor2) -> SymFunc:
    """sum <phi | t_(2)> t_(1)."""
    pp = phi.p_terms
    out: dict = {}
    for (a, b), c in t.p_terms.items():
        if b in pp:
            out[a] = out.get(a, 0) + c * pp[b] * z_of(b)
    return SymFunc._from_p_terms(out, phi.basis, min(phi.degree_cap, t.degree_cap))


def pair_tensors(t: Tensor2, u: Tensor2) -> Fraction:
    """Hall pairing extended to the tensor square, legwise."""
    up = u.p_terms
    return sum((c * up[k] * z_of(k[0]) * z_of(k[1]) for k, c in t.p_terms.items() if k in up),
               Fraction(0))


def multiply(t: Tensor2, basis: str = "p") -> SymFunc:
    """The outer multiplication map, a (x) b -> ab."""
    out: dict = {}
    for (a, b), c in t.p_terms.items():
        key = union(a, b)
        out[key] = out.get(key, 0) + c
    return SymFunc._from_p_terms(out, basis, t.degree_cap)


def map_legs(t: Tensor2, left=None, right=None) -> Tensor2:
    """Apply linear maps SymFunc -> SymFunc to each leg (None means identity)."""
    out: dict = {}
    cap = t.degree_cap
    for (a, b), c in t.p_terms.items():
        la = left(_leg(a, cap)).p_terms if left else {a: Fraction(1)}
        rb = right(_leg(b, cap)).p_terms if right else {b: Fraction(1)}
        for a2, x in la.items():
            for b2, y in rb.items():
                out[a2, b2] = out.get((a2, b2), 0) + c * x * y
    return Tensor2(out, ("p", "p"), cap)


def iterate_coproduct(t: Tensor2, kind: str, side: str) -> dict:
    """(cop (x) id) t for side 'left', (id (x) cop) t for 'right'.

    Returns a plain dict keyed by partition triples, in the p basis.
    """
    cop = COPRODUCTS[kind]
    cap = t.degree_cap
    out: dict = {}
    for (a, b), c in t.p_terms.items():
        if side == "left":
            for (x, y), v in cop(_leg(a, cap)).p_terms.items():
                out[x, y, b] = out.get((x, y, b), 0) + c * v
        else:
            for (x, y), v in cop(_leg(b, cap)).p_terms.items():
                out[a, x, y] = out.get((a, x, y), 0) + c * v
    return {k: v for k, v in out.items() if v}


def convolve(psi: SymFunc, phi: SymFunc) -> SymFunc:
    """Element representing the convolution of the functionals <psi|.> and <phi|.>.

    Under the outer coproduct and Hall pairing this is the outer product.
    """
    return outer_product(psi, phi)


def convolution_operator(phi: SymFunc, kind: str = "outer"):
    """T_phi(f) = <phi | f_(1)> f_(2) for the given coproduct."""
    cop = COPRODUCTS[kind]
    return lambda f: pair_left(phi, cop(f))


def check_duality(kind: str, f: SymFunc, g: SymFunc, h: SymFunc) -> bool:
    """<cop f | g (x) h> == <f | product(g, h)>.

    For ``pleth`` the identity is only linear in g, so h should be a single
    Schur function.
    """
    product = {"outer": outer_product, "inner": inner_product_op, "pleth": plethysm}[kind]
    return pair_tensors(coproduct(kind, f), tensor(g, h)) == hall_inner(f, product(g, h))
