"""Text syntax for symmetric functions: ``3/2*p[2,1] + s[3] - h[1,1]``.

A bare rational is a multiple of the unit.  Mixed bases are allowed; the
result is expressed in the basis of the first basis term.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .partitions import Partition
from .symfunc import BASES, SymFunc, format_terms

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<basis>[a-z])\[(?P<parts>[^\]]*)\]|(?P<op>[-+*/]))")


class ExpressionError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            if re.match(r"[a-z]\[[^\]]*$", text[start:]):
                raise ExpressionError("unclosed '['", text, start + 1)
            raise ExpressionError("unexpected character", text, start)
        start = m.start(m.lastgroup if m.lastgroup != "parts" else "basis")
        if m.group("num") is not None:
            yield "num", int(m.group("num")), start
        elif m.group("basis") is not None:
            yield "term", (m.group("basis"), m.group("parts"), m.start("parts")), start
        else:
            yield "op", m.group("op"), start
        pos = m.end()
    yield "end", None, len(text)


def _basis_term(text: str, basis: str, body: str, at: int) -> tuple[str, Partition]:
    if basis not in BASES:
        raise ExpressionError(f"unknown basis {basis!r}", text, at - 2)
    try:
        parts = [int(x) for x in body.split(",")] if body.strip() else []
        return basis, Partition(parts)
    except ValueError:
        raise ExpressionError(f"not a partition: [{body}]", text, at)


def parse_symfunc(text: str, degree_cap: int | None = None) -> SymFunc:
    """Parse an expression into a SymFunc."""
    toks = list(_tokens(text))
    i = 0
    collected: list[tuple[Fraction, str | None, Partition]] = []

    def peek():
        return toks[i]

    while True:
        sign = 1
        kind, val, pos = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif collected:
            raise ExpressionError("expected '+' or '-'", text, pos)
        kind, val, pos = peek()
        coef = Fraction(sign)
        basis_term = None
        if kind == "num":
            num = val
            i += 1
            if peek()[0] == "op" and peek()[1] == "/":
                i += 1
                kind, den, pos = peek()
                if kind != "num":
                    raise ExpressionError("expected a denominator", text, pos)
                if den == 0:
                    raise ExpressionError("zero denominator", text, pos)
                i += 1
                coef *= Fraction(num, den)
            else:
                coef *= num
            if peek()[0] == "op" and peek()[1] == "*":
                i += 1
                kind, val, pos = peek()
                if kind != "term":
                    raise ExpressionError("expected a basis term after '*'", text, pos)
                basis_term = _basis_term(text, val[0], val[1], val[2])
                i += 1
        elif kind == "term":
            basis_term = _basis_term(text, val[0], val[1], val[2])
            i += 1
        else:
            raise ExpressionError("expected a term", text, pos)
        collected.append((coef, *(basis_term or (None, Partition()))))
        if peek()[0] == "end":
            break

    bases = [b for _, b, _ in collected if b is not None]
    target = bases[0] if bases else "p"
    total = SymFunc({}, target, degree_cap)
    for basis in dict.fromkeys([target] + bases):
        terms: dict = {}
        for coef, b, lam in collected:
            if (b or target) == basis:
                terms[lam] = terms.get(lam, 0) + coef
        total = total + SymFunc(terms, basis, degree_cap)
    return total


def format_symfunc(f: SymFunc) -> str:
    return format_terms(f)
