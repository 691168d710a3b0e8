"""Algebraic random walks on coordinate-parametrized states.

A group-like state is the series ``M_c = exp(sum_n c_n p_n / n)``, measured
on a symmetric function f by the Hall pairing ``<M_c | f>``.  Mixtures of such
states are stored as weighted branches of coordinates, and the three kinds of
walker step act on the coordinates directly:

* outer step with components (prob_i, phi^i): c -> c + phi^i (translation);
* inner step with components (prob_j, psi^j): c -> psi^j c (dilation);
* right plethystic step by p_m: c'_{mn} = m c_n, zero off multiples of m.

Each generator component is itself the series ``exp(sum_n phi_n p_n / n)``,
so that ``M_c M_phi = M_{c+phi}`` and ``M_psi * M_c = M_{psi c}``.

:func:`fastpath_vs_ring_check` re-derives every step from ring-level
products of the expanded series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .characters import character
from .partitions import (
    DegreeCapError,
    Partition,
    from_parts,
    get_degree_cap,
    partitions_of,
    partitions_up_to,
    z_of,
)
from .symfunc import (
    SeriesSpec,
    SymFunc,
    coordinate_monomial,
    coordinate_tuple,
    exp_series,
    expand_series,
    hall_inner,
    inner_product_op,
    outer_product,
    perp,
    plethysm,
    power_sum,
    schur,
)

DEFAULT_BRANCH_CAP = 4096


class BranchCapError(RuntimeError):
    """The number of mixture branches exceeded the configured cap."""


@dataclass(frozen=True)
class CoordinateSequence:
    """Height coordinates c_1..c_N (absent entries are zero)."""

    values: tuple

    @classmethod
    def of(cls, values=None, degree_cap: int | None = None) -> "CoordinateSequence":
        if isinstance(values, CoordinateSequence):
            values = dict(enumerate(values.values, start=1))
        cap = get_degree_cap() if degree_cap is None else degree_cap
        return cls(coordinate_tuple(values, cap))

    @property
    def degree_cap(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        if n < 1:
            raise IndexError("coordinates are indexed from 1")
        return self.values[n - 1] if n <= len(self.values) else Fraction(0)

    def __add__(self, other: "CoordinateSequence") -> "CoordinateSequence":
        return CoordinateSequence(tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other: "CoordinateSequence") -> "CoordinateSequence":
        return CoordinateSequence(tuple(a * b for a, b in zip(self.values, other.values)))

    def occupied(self) -> int:
        """Largest index with a nonzero coordinate (0 if none)."""
        return max((n for n, v in enumerate(self.values, start=1) if v), default=0)

    def inflate(self, m: int) -> tuple["CoordinateSequence", bool]:
        cap = len(self.values)
        out = [Fraction(0)] * cap
        dropped = False
        for n, v in enumerate(self.values, start=1):
            if not v:
                continue
            if m * n > cap:
                dropped = True
                continue
            out[m * n - 1] = m * v
        return CoordinateSequence(tuple(out)), dropped

    def to_strings(self) -> list[str]:
        return [_rat(v) for v in self.values]


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class Branch(NamedTuple):
    weight: Fraction
    c: CoordinateSequence
    d: CoordinateSequence | None = None


def _check_probabilities(probs: Iterable[Fraction], what: str) -> None:
    probs = list(probs)
    if any(p < 0 for p in probs):
        raise ValueError(f"{what}: probabilities must be nonnegative")
    if sum(probs) != 1:
        raise ValueError(f"{what}: probabilities sum to {sum(probs)}, not 1")


@dataclass(frozen=True)
class MixtureState:
    """Convex combination of group-like (or extended) coordinate states."""

    branches: tuple
    degree_cap: int
    truncated: bool = False

    def __post_init__(self):
        if not self.branches:
            raise ValueError("a state needs at least one branch")
        _check_probabilities((b.weight for b in self.branches), "state")
        for b in self.branches:
            if b.c.degree_cap != self.degree_cap or (b.d is not None and b.d.degree_cap != self.degree_cap):
                raise ValueError("branch coordinates do not match the state degree cap")

    @classmethod
    def group_like(cls, c, degree_cap: int | None = None) -> "MixtureState":
        cap = get_degree_cap() if degree_cap is None else degree_cap
        return cls((Branch(Fraction(1), CoordinateSequence.of(c, cap)),), cap)

    @classmethod
    def extended(cls, c, d, degree_cap: int | None = None) -> "MixtureState":
        cap = get_degree_cap() if degree_cap is None else degree_cap
        return cls((Branch(Fraction(1), CoordinateSequence.of(c, cap),
                           CoordinateSequence.of(d, cap)),), cap)

    @classmethod
    def mixture(cls, branches: Iterable, degree_cap: int | None = None) -> "MixtureState":
        """From (weight, c) or (weight, c, d) tuples."""
        cap = get_degree_cap() if degree_cap is None else degree_cap
        out = []
        for item in branches:
            w, c, *rest = item
            d = rest[0] if rest else None
            out.append(Branch(Fraction(w), CoordinateSequence.of(c, cap),
                              None if d is None else CoordinateSequence.of(d, cap)))
        return cls(tuple(out), cap)

    @property
    def is_extended(self) -> bool:
        return any(b.d is not None for b in self.branches)

    def total_weight(self) -> Fraction:
        return sum((b.weight for b in self.branches), Fraction(0))


@dataclass(frozen=True)
class PureInnerState:
    """rho = sum_lam r_lam p_lam, normalized when sum_lam r_lam = 1."""

    r: Mapping
    degree_cap: int

    @classmethod
    def of(cls, r: Mapping, degree_cap: int | None = None) -> "PureInnerState":
        cap = get_degree_cap() if degree_cap is None else degree_cap
        clean = {}
        for lam, v in r.items():
            lam = Partition(lam)
            if sum(lam) > cap:
                raise DegreeCapError(f"{lam} exceeds degree cap {cap}")
            v = Fraction(v)
            if v:
                clean[lam] = v
        return cls(clean, cap)

    def normalization(self) -> Fraction:
        return sum(self.r.values(), Fraction(0))

    def series(self) -> SymFunc:
        return SymFunc(self.r, "p", self.degree_cap)


# ---------------------------------------------------------------------------
# step specifications

def _components(items, cap, what) -> tuple:
    comps = tuple((Fraction(p), CoordinateSequence.of(c, cap)) for p, c in items)
    _check_probabilities((p for p, _ in comps), what)
    return comps


@dataclass(frozen=True)
class OuterStep:
    components: tuple
    kind: str = field(default="outer", init=False)

    @classmethod
    def of(cls, items, degree_cap: int | None = None) -> "OuterStep":
        """From (probability, phi) pairs."""
        return cls(_components(items, degree_cap, "outer step"))


@dataclass(frozen=True)
class InnerStep:
    components: tuple
    kind: str = field(default="inner", init=False)

    @classmethod
    def of(cls, items, degree_cap: int | None = None) -> "InnerStep":
        """From (probability, psi) pairs."""
        return cls(_components(items, degree_cap, "inner step"))


@dataclass(frozen=True)
class PlethStep:
    m: int
    kind: str = field(default="pleth-right", init=False)

    def __post_init__(self):
        if int(self.m) < 1:
            raise ValueError("plethystic step needs m >= 1")


@dataclass(frozen=True)
class WeightedPlethStep:
    parts: tuple  # (w_i, m_i) pairs
    kind: str = field(default="pleth-right", init=False)

    def __post_init__(self):
        parts = tuple((Fraction(w), int(m)) for w, m in self.parts)
        if not parts:
            raise ValueError("weighted plethystic step needs at least one part")
        if any(m < 1 for _, m in parts):
            raise ValueError("plethystic step needs m >= 1")
        object.__setattr__(self, "parts", parts)


# ---------------------------------------------------------------------------
# steps on mixture states

def _merge(branches: Iterable[Branch], cap: int, branch_cap: int) -> tuple:
    merged: dict = {}
    for b in branches:
        if b.weight == 0:
            continue
        key = (b.c.values, None if b.d is None else b.d.values)
        if key in merged:
            merged[key] = merged[key]._replace(weight=merged[key].weight + b.weight)
        else:
            merged[key] = b
        if len(merged) > branch_cap:
            raise BranchCapError(f"branch count exceeded cap {branch_cap}")
    return tuple(merged.values())


def _fit(c: CoordinateSequence, cap: int) -> CoordinateSequence:
    return c if c.degree_cap == cap else CoordinateSequence.of(c, cap)


def outer_step(state: MixtureState, step: OuterStep,
               branch_cap: int = DEFAULT_BRANCH_CAP) -> MixtureState:
    """M_c -> sum_i prob_i M_{c + phi^i}, for every branch."""
    cap = state.degree_cap
    new = [Branch(b.weight * p, b.c + _fit(phi, cap), b.d)
           for b in state.branches for p, phi in step.components]
    return MixtureState(_merge(new, cap, branch_cap), cap, state.truncated)


def inner_step(state: MixtureState, step: InnerStep,
               branch_cap: int = DEFAULT_BRANCH_CAP) -> MixtureState:
    """M_c -> sum_j prob_j M_{psi^j c} (coordinatewise product)."""
    if state.is_extended:
        raise ValueError("inner steps are not defined on extended states")
    cap = state.degree_cap
    new = [Branch(b.weight * p, b.c * _fit(psi, cap))
           for b in state.branches for p, psi in step.components]
    return MixtureState(_merge(new, cap, branch_cap), cap, state.truncated)


def pleth_step_right(state: MixtureState, m: int) -> MixtureState:
    """M_c -> M_c[p_m]: heights move from n to mn and are multiplied by m.

    Coordinates pushed beyond the degree cap are dropped and the state is
    flagged ``truncated``; measurements of degree <= cap remain exact.
    """
    m = int(m)
    if m < 1:
        raise ValueError("plethystic step needs m >= 1")
    if state.is_extended:
        raise ValueError("plethystic steps are not defined on extended states")
    truncated = state.truncated
    new = []
    for b in state.branches:
        c, dropped = b.c.inflate(m)
        truncated = truncated or dropped
        new.append(Branch(b.weight, c))
    return MixtureState(_merge(new, state.degree_cap, len(new)), state.degree_cap, truncated)


def pleth_step_right_weighted(state: MixtureState, parts: Sequence) -> SymFunc:
    """State after a step generated by w_1 p_{m_1} + ... + w_K p_{m_K}.

    Uses the rule p_n[sum_i w_i p_{m_i}] -> w p_{n omega} with w the product
    of the weights and omega the partition of the m_i, giving
    exp(sum_n w c_n p_{n omega} / n).  For K >= 2 the result lies outside the
    single-power-sum parametrization, so a full series is returned.  It is
    not the ring plethysm of M_c by the weighted sum when K >= 2.
    """
    step = parts if isinstance(parts, WeightedPlethStep) else WeightedPlethStep(tuple(parts))
    if state.is_extended:
        raise ValueError("plethystic steps are not defined on extended states")
    cap = state.degree_cap
    w = prod((wi for wi, _ in step.parts), start=Fraction(1))
    omega = from_parts(m for _, m in step.parts)
    total = SymFunc({}, "p", cap)
    truncated = False
    for b in state.branches:
        exponent = {}
        for n, cn in enumerate(b.c.values, start=1):
            if not cn or not w:
                continue
            if n * sum(omega) > cap:
                truncated = True
                continue
            exponent[from_parts(n * k for k in omega)] = w * cn / n
        total = total + exp_series(SymFunc(exponent, "p", cap)) * b.weight
    return SymFunc(total.terms, "p", cap, truncated or state.truncated)


# ---------------------------------------------------------------------------
# measurement

def s_alpha_poly(alpha: Sequence[int], c) -> Fraction:
    """S_alpha(c) = sum_beta chi^alpha_beta c_beta / z_beta."""
    alpha = Partition(alpha)
    values = c.values if isinstance(c, CoordinateSequence) else tuple(Fraction(x) for x in c)
    n = sum(alpha)
    return sum((Fraction(character(alpha, beta), z_of(beta)) * coordinate_monomial(values, beta)
                for beta in partitions_of(n, cap=n)), Fraction(0))


def branch_series(b: Branch, cap: int) -> SymFunc:
    if b.d is None:
        return expand_series(SeriesSpec("M_c", c=b.c.values, degree_cap=cap))
    return expand_series(SeriesSpec("M_dc", c=b.c.values, d=b.d.values, degree_cap=cap))


def state_series(state) -> SymFunc:
    """The state as an element of the (completed) ring, truncated at its cap."""
    if isinstance(state, SymFunc):
        return state
    if isinstance(state, PureInnerState):
        return state.series()
    total = SymFunc({}, "p", state.degree_cap)
    for b in state.branches:
        total = total + branch_series(b, state.degree_cap) * b.weight
    return total


def measure(state, f: SymFunc) -> Fraction:
    """Value of the state on the random variable f.

    Group-like branches use the Schur expansion f = sum f_alpha s_alpha and
    sum_alpha f_alpha S_alpha(c); extended branches and raw series use the
    Hall pairing against the expanded series.
    """
    if isinstance(state, (SymFunc, PureInnerState)):
        series = state_series(state)
        if f.degree > series.degree_cap:
            raise DegreeCapError(f"observable degree {f.degree} exceeds cap {series.degree_cap}")
        return hall_inner(series, f)
    if f.degree > state.degree_cap:
        raise DegreeCapError(f"observable degree {f.degree} exceeds cap {state.degree_cap}")
    fs = f.to_basis("s")
    total = Fraction(0)
    for b in state.branches:
        if b.d is None:
            value = sum((coef * s_alpha_poly(alpha, b.c) for alpha, coef in fs.terms.items()),
                        Fraction(0))
        else:
            value = hall_inner(branch_series(b, state.degree_cap), f)
        total += b.weight * value
    return total


# ---------------------------------------------------------------------------
# pure inner walks

def pure_inner_step(rho: PureInnerState, psi) -> tuple[PureInnerState, Fraction]:
    """psi * rho = sum_lam psi_lam r_lam z_lam p_lam, plus its normalization sum.

    Normalization is not restored; callers inspect the returned sum.
    """
    if isinstance(psi, SymFunc):
        coeffs = psi.p_terms
    elif isinstance(psi, PureInnerState):
        coeffs = psi.r
    else:
        coeffs = {Partition(k): Fraction(v) for k, v in psi.items()}
    new = {lam: coeffs.get(lam, 0) * r * z_of(lam) for lam, r in rho.r.items()}
    state = PureInnerState.of(new, rho.degree_cap)
    return state, state.normalization()


def pure_inner_positivity(rho: PureInnerState, f: SymFunc) -> Fraction:
    """<rho | f*f> by the closed form sum_lam r_lam (f_lam z_lam)^2."""
    fp = f.p_terms
    return sum((r * (fp[lam] * z_of(lam)) ** 2 for lam, r in rho.r.items() if lam in fp),
               Fraction(0))


# ---------------------------------------------------------------------------
# action on random variables

def evolve_schur(lam: Sequence[int], steps: Sequence[OuterStep],
                 degree_cap: int | None = None) -> list[tuple[Fraction, SymFunc]]:
    """Branch s_lam through successive outer steps.

    Each step maps f to sum_alpha S_alpha(phi) s_alpha-perp(f) with the
    component's probability; one output entry per path of components.
    """
    cap = get_degree_cap() if degree_cap is None else degree_cap
    current = [(Fraction(1), schur(lam, cap))]
    for step in steps:
        nxt = []
        for prob, f in current:
            for p, phi in step.components:
                g = SymFunc({}, "s", cap)
                for n in range(f.degree + 1):
                    for alpha in partitions_of(n, cap=cap):
                        weight = s_alpha_poly(alpha, _fit(phi, cap))
                        if weight:
                            g = g + perp(schur(alpha, cap), f) * weight
                nxt.append((prob * p, g.to_basis("s")))
        current = nxt
    return current


# ---------------------------------------------------------------------------
# audits

@dataclass
class AuditReport:
    trials: int
    seed: int
    max_degree: int
    violations: list = field(default_factory=list)  # (f, value) witnesses
    min_value: Fraction | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


def random_symfunc(rng: np.random.Generator, max_degree: int, cap: int,
                   basis: str = "s", density: float = 0.5) -> SymFunc:
    """Random rational combination of basis elements of degree <= max_degree."""
    terms = {}
    for lam in partitions_up_to(max_degree, cap):
        if rng.random() < density:
            num = int(rng.integers(-9, 10))
            den = int(rng.integers(1, 7))
            terms[lam] = Fraction(num, den)
    return SymFunc(terms, basis, cap)


def audit_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for a (seed, stream...) address."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(stream)))


def positivity_audit(state, trials: int, seed: int, max_degree: int | None = None,
                     stream: Sequence[int] = ()) -> AuditReport:
    """Check measure(state, f*f) >= 0 on pseudo-random f (outer square).

    For pure inner states the square is the inner square f * f.  ``stream``
    selects an independent substream, e.g. one per walk step.
    """
    cap = state.degree_cap
    max_degree = cap // 2 if max_degree is None else max_degree
    if 2 * max_degree > cap:
        raise DegreeCapError(f"squares of degree {2 * max_degree} exceed cap {cap}")
    report = AuditReport(trials, seed, max_degree)
    # pairing against the expanded series once beats re-expanding per trial
    series = None
    if not isinstance(state, MixtureState) or state.is_extended:
        series = state_series(state)
    square = inner_product_op if isinstance(state, PureInnerState) else outer_product
    for k in range(trials):
        f = random_symfunc(audit_rng(seed, *stream, k), max_degree, cap)
        fp = f.to_basis("p")
        g = square(fp, fp)
        value = measure(state, g) if series is None else hall_inner(series, g)
        if report.min_value is None or value < report.min_value:
            report.min_value = value
        if value < 0:
            report.violations.append((f, value))
    return report


def step_series(step, cap: int) -> SymFunc:
    """The generator as a ring element: sum_i prob_i exp(sum_n phi_n p_n / n)."""
    total = SymFunc({}, "p", cap)
    for p, phi in step.components:
        total = total + expand_series(SeriesSpec("M_c", c=_fit(phi, cap).values, degree_cap=cap)) * p
    return total


def default_battery(cap: int, max_degree: int = 6) -> list[SymFunc]:
    return [schur(lam, cap) for lam in partitions_up_to(min(cap, max_degree), cap)]


def apply_step(state: MixtureState, step, branch_cap: int = DEFAULT_BRANCH_CAP):
    if isinstance(step, OuterStep):
        return outer_step(state, step, branch_cap)
    if isinstance(step, InnerStep):
        return inner_step(state, step, branch_cap)
    if isinstance(step, PlethStep):
        return pleth_step_right(state, step.m)
    if isinstance(step, WeightedPlethStep):
        return pleth_step_right_weighted(state, step)
    raise TypeError(f"unknown step {step!r}")


def ring_step(state: MixtureState, step) -> SymFunc:
    """The step evaluated with ring products on expanded series."""
    cap = state.degree_cap
    series = state_series(state)
    if isinstance(step, OuterStep):
        return outer_product(series, step_series(step, cap))
    if isinstance(step, InnerStep):
        return inner_product_op(step_series(step, cap), series)
    if isinstance(step, PlethStep):
        return plethysm(series, power_sum([step.m], cap))
    if isinstance(step, WeightedPlethStep):
        if len(step.parts) != 1:
            raise ValueError("multi-part weighted steps have no ring-plethysm counterpart")
        (w, m), = step.parts
        return plethysm(series, power_sum([m], cap) * w)
    raise TypeError(f"unknown step {step!r}")


def fastpath_vs_ring_check(state: MixtureState, step, battery: Sequence[SymFunc] | None = None) -> bool:
    """True iff the coordinate shortcut and the ring computation measure alike."""
    battery = default_battery(state.degree_cap) if battery is None else battery
    fast = apply_step(state, step)
    ring = ring_step(state, step)
    return all(measure(fast, f) == hall_inner(ring, f) for f in battery)


# ---------------------------------------------------------------------------
# extended-state sum of squares

def extended_square_terms(c, d, f: SymFunc, degree_cap: int | None = None) -> list:
    """Terms of <M_dc | f^2> = sum_alpha <M_dc s_alpha(XA) | f>^2.

    A is the alphabet with p_k(A) = sqrt(2) d_k.  Each term is returned as
    (alpha, a, b) meaning a + b*sqrt(2).
    """
    cap = get_degree_cap() if degree_cap is None else degree_cap
    c = CoordinateSequence.of(c, cap)
    d = CoordinateSequence.of(d, cap)
    base = expand_series(SeriesSpec("M_dc", c=c.values, d=d.values, degree_cap=cap))
    out = []
    for n in range(f.degree + 1):
        for alpha in partitions_of(n, cap=cap):
            rational, surd = {}, {}
            for rho in partitions_of(n, cap=cap):
                coef = Fraction(character(alpha, rho), z_of(rho)) * coordinate_monomial(d.values, rho)
                if not coef:
                    continue
                ell = len(rho)
                if ell % 2 == 0:
                    rational[rho] = coef * 2 ** (ell // 2)
                else:
                    surd[rho] = coef * 2 ** ((ell - 1) // 2)
            a = hall_inner(outer_product(base, SymFunc(rational, "p", cap)), f)
            b = hall_inner(outer_product(base, SymFunc(surd, "p", cap)), f)
            out.append((alpha, a, b))
    return out


def sum_of_squares(terms) -> tuple[Fraction, Fraction]:
    """sum (a + b sqrt2)^2 as (rational part, coefficient of sqrt2)."""
    rational = sum((a * a + 2 * b * b for _, a, b in terms), Fraction(0))
    surd = sum((2 * a * b for _, a, b in terms), Fraction(0))
    return rational, surd
