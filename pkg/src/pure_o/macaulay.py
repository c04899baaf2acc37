"""Binomial (Macaulay) representations and the O-sequence growth test."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .order_ideal import validate_hvector

WORD_MAX = 2**63 - 1


def _binom(n: int, k: int) -> int:
    value = comb(n, k)
    if value > WORD_MAX:
        raise OverflowError(f"C({n},{k}) exceeds the 64-bit range")
    return value


def _largest_top(value: int, k: int) -> int:
    # C(a, k) is increasing in a >= k; bracket then bisect
    lo, hi = k, k + 1
    while comb(hi, k) <= value:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if comb(mid, k) <= value:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class MacaulayRep:
    value: int
    degree: int
    terms: tuple[tuple[int, int], ...]  # (top, bottom), bottoms strictly decreasing

    def __str__(self) -> str:
        return " + ".join(f"C({a},{k})" for a, k in self.terms)


def macaulay_rep(value: int, i: int) -> MacaulayRep:
    """Greedy ``i``-binomial representation of ``value``.

    Picks the largest ``a`` with ``C(a, i) <= value``, then recurses on the
    remainder with ``i - 1`` until nothing is left.
    """
    if value < 1 or i < 1:
        raise ValueError("value and degree must be positive")
    terms = []
    rest, k = value, i
    while rest > 0 and k >= 1:
        a = _largest_top(rest, k)
        terms.append((a, k))
        rest -= _binom(a, k)
        k -= 1
    return MacaulayRep(value, i, tuple(terms))


def macaulay_growth(value: int, i: int) -> int:
    """Largest possible ``h_{i+1}`` in an O-sequence with ``h_i = value``."""
    return sum(_binom(a + 1, k + 1) for a, k in macaulay_rep(value, i).terms)


def is_o_sequence(h: Sequence[int]) -> bool:
    h = validate_hvector(h)
    return all(h[i + 1] <= macaulay_growth(h[i], i) for i in range(1, len(h) - 1))


def first_violation(h: Sequence[int]) -> int | None:
    """Index ``i`` of the first failing step ``h_i -> h_{i+1}``, or None."""
    h = validate_hvector(h)
    for i in range(1, len(h) - 1):
        if h[i + 1] > macaulay_growth(h[i], i):
            return i
    return None
