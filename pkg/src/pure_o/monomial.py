"""Monomials in indexed variables ``x1, x2, ...``.

A monomial is stored as a sorted tuple of ``(variable, exponent)`` pairs with
every exponent positive, so equality and hashing are structural.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping


class MonomialSyntaxError(ValueError):
    """Raised when text does not follow the monomial grammar."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True, order=False)
class Monomial:
    exponents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 0
        for var, exp in self.exponents:
            if var <= prev:
                raise ValueError("variable indices must be positive and strictly increasing")
            if exp < 1:
                raise ValueError("stored exponents must be >= 1")
            prev = var

    @classmethod
    def from_dict(cls, exps: Mapping[int, int]) -> "Monomial":
        return cls(tuple(sorted((v, e) for v, e in exps.items() if e != 0)))

    @classmethod
    def from_vector(cls, vec: Iterable[int]) -> "Monomial":
        """Build from a dense exponent vector; entry ``i`` is the exponent of ``x(i+1)``."""
        return cls(tuple((i + 1, int(e)) for i, e in enumerate(vec) if e))

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def exponent(self, var: int) -> int:
        for v, e in self.exponents:
            if v == var:
                return e
        return 0

    def vector(self, nvars: int) -> tuple[int, ...]:
        out = [0] * nvars
        for v, e in self.exponents:
            out[v - 1] = e
        return tuple(out)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def __str__(self) -> str:
        return format_monomial(self)

    def __repr__(self) -> str:
        return f"Monomial({format_monomial(self)!r})"


UNIT = Monomial()

_FACTOR = re.compile(r"x([0-9]+)(?:\^([0-9]+))?")


def parse_monomial(text: str) -> Monomial:
    """Parse ``"1"`` or ``x<i>[^<e>]`` factors joined by ``*``; repeats accumulate."""
    if text == "1":
        return UNIT
    if not text:
        raise MonomialSyntaxError("empty monomial", text, 0)
    exps: dict[int, int] = {}
    pos = 0
    while True:
        m = _FACTOR.match(text, pos)
        if m is None:
            raise MonomialSyntaxError("expected factor 'x<index>'", text, pos)
        var = int(m.group(1))
        if m.group(1).startswith("0"):
            raise MonomialSyntaxError("variable index must be a positive integer", text, m.start(1))
        exp = 1
        if m.group(2) is not None:
            exp = int(m.group(2))
            if m.group(2).startswith("0"):
                raise MonomialSyntaxError("exponent must be a positive integer", text, m.start(2))
        exps[var] = exps.get(var, 0) + exp
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "*":
            raise MonomialSyntaxError("expected '*'", text, pos)
        pos += 1
    return Monomial.from_dict(exps)


def format_monomial(m: Monomial) -> str:
    if not m.exponents:
        return "1"
    return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in m.exponents)


def degree(m: Monomial) -> int:
    return m.degree


def divides(v: Monomial, u: Monomial) -> bool:
    ue = dict(u.exponents)
    return all(ue.get(var, 0) >= e for var, e in v.exponents)


def support(m: Monomial) -> frozenset[int]:
    return frozenset(v for v, _ in m.exponents)


def divisors_of_degree(u: Monomial, d: int) -> set[Monomial]:
    """All degree-``d`` monomials dividing ``u``."""
    if d < 0 or d > u.degree:
        raise ValueError(f"degree {d} outside 0..{u.degree}")
    variables = [v for v, _ in u.exponents]
    caps = [e for _, e in u.exponents]
    # suffix sums bound how much degree the remaining variables can still absorb
    room = list(itertools.accumulate(reversed(caps)))[::-1] + [0]
    out: set[Monomial] = set()
    chosen: list[int] = []

    def walk(i: int, left: int) -> None:
        if left > room[i]:
            return
        if i == len(caps):
            out.add(Monomial(tuple((variables[j], e) for j, e in enumerate(chosen) if e)))
            return
        for e in range(min(caps[i], left) + 1):
            chosen.append(e)
            walk(i + 1, left - e)
            chosen.pop()

    walk(0, d)
    return out


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of all degree-``d`` monomials in ``nvars`` variables.

    Ordered lexicographically descending, so ``x1^d`` comes first.
    """
    out: list[tuple[int, ...]] = []

    def walk(prefix: list[int], left: int) -> None:
        if len(prefix) == nvars - 1:
            out.append(tuple(prefix) + (left,))
            return
        for e in range(left, -1, -1):
            prefix.append(e)
            walk(prefix, left - e)
            prefix.pop()

    if nvars == 0:
        return [()] if d == 0 else []
    walk([], d)
    return out
