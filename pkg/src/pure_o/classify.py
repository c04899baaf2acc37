"""Closed-form decisions and explicit witnesses for sequences (1, a, ..., a, b).

Socle degree n >= 4 is pure exactly when b <= a <= 2b; n = 3 when
ceil(a/3) <= b <= a; n = 2 when ceil(a/2) <= b <= C(a+1, 2).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .decision import (
    ABOVE_UPPER_BOUND,
    BELOW_LOWER_BOUND,
    EXCEEDS_TWICE_SOCLE,
    NOT_PURE,
    PURE,
    Decision,
)
from .monomial import Monomial, divisors_of_degree, support
from .order_ideal import GeneratorSet

RULE_FLAT = "theorem-flat"
RULE_SOCLE2 = "prop-2.1-i"
RULE_SOCLE3 = "prop-2.1-ii"
RULE_NO_GROWTH = "lemma-1.1"
RULE_PQ = "lemma-1.3"
RULE_N1 = "n1-convention"


class WitnessRangeError(ValueError):
    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


@dataclass(frozen=True)
class FlatQuery:
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 1 or self.a < 1 or self.b < 1:
            raise ValueError(f"n, a, b must be positive, got {self.n}, {self.a}, {self.b}")

    @property
    def sequence(self) -> tuple[int, ...]:
        if self.n == 1:
            return (1, self.b)
        return (1,) + (self.a,) * (self.n - 1) + (self.b,)

    def as_dict(self) -> dict[str, int]:
        return {"n": self.n, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class PartitionPlan:
    """Counts of generator shapes; ``parts[k]`` generators each cover ``k`` variables."""

    parts: dict[int, int]

    @property
    def a(self) -> int:
        return sum(k * c for k, c in self.parts.items())

    @property
    def b(self) -> int:
        return sum(self.parts.values())


def _ceil_div(x: int, y: int) -> int:
    return -(-x // y)


def flat_plan(a: int, b: int) -> PartitionPlan:
    if b > a:
        raise WitnessRangeError(ABOVE_UPPER_BOUND, f"b={b} > a={a}")
    if 2 * b < a:
        raise WitnessRangeError(EXCEEDS_TWICE_SOCLE, f"2b={2 * b} < a={a}")
    return PartitionPlan({2: a - b, 1: 2 * b - a})


def socle3_plan(a: int, b: int) -> PartitionPlan:
    if b > a:
        raise WitnessRangeError(ABOVE_UPPER_BOUND, f"b={b} > a={a}")
    if 3 * b < a:
        raise WitnessRangeError(BELOW_LOWER_BOUND, f"b={b} < ceil(a/3)={_ceil_div(a, 3)}")
    # 2*t1 + t2 = a - b; take t1 as large as possible
    extra = a - b
    t1, t2 = extra // 2, extra % 2
    return PartitionPlan({3: t1, 2: t2, 1: b - t1 - t2})


def witness_flat(n: int, a: int, b: int) -> GeneratorSet:
    """Pairs x*y^(n-1) on fresh variables plus pure n-th powers; h = (1, a, ..., a, b)."""
    if n < 2:
        raise ValueError("witness_flat needs n >= 2")
    plan = flat_plan(a, b)
    gens = []
    var = 1
    for _ in range(plan.parts[2]):
        gens.append(Monomial(((var, 1), (var + 1, n - 1))))
        var += 2
    for _ in range(plan.parts[1]):
        gens.append(Monomial(((var, n),)))
        var += 1
    return tuple(gens)


def witness_socle3(a: int, b: int) -> GeneratorSet:
    plan = socle3_plan(a, b)
    gens = []
    var = 1
    for _ in range(plan.parts[3]):
        gens.append(Monomial(((var, 1), (var + 1, 1), (var + 2, 1))))
        var += 3
    for _ in range(plan.parts[2]):
        gens.append(Monomial(((var, 1), (var + 1, 2))))
        var += 2
    for _ in range(plan.parts[1]):
        gens.append(Monomial(((var, 3),)))
        var += 1
    return tuple(gens)


def witness_socle2(a: int, b: int) -> GeneratorSet:
    """Cover all ``a`` variables with ceil(a/2) quadrics, then add more in (i, j) order."""
    if 2 * b < a:
        raise WitnessRangeError(BELOW_LOWER_BOUND, f"b={b} < ceil(a/2)={_ceil_div(a, 2)}")
    if b > comb(a + 1, 2):
        raise WitnessRangeError(ABOVE_UPPER_BOUND, f"b={b} > C(a+1,2)={comb(a + 1, 2)}")
    gens = [Monomial(((2 * i - 1, 1), (2 * i, 1))) for i in range(1, a // 2 + 1)]
    if a % 2:
        gens.append(Monomial(((a, 2),)))
    present = set(gens)
    for i in range(1, a + 1):
        for j in range(i, a + 1):
            if len(gens) == b:
                return tuple(gens)
            m = Monomial(((i, 2),)) if i == j else Monomial(((i, 1), (j, 1)))
            if m not in present:
                gens.append(m)
                present.add(m)
    return tuple(gens)


def decide_flat(q: FlatQuery) -> Decision:
    n, a, b = q.n, q.a, q.b
    query = q.as_dict()
    if n == 1:
        if b == a:
            gens = tuple(Monomial(((v, 1),)) for v in range(1, a + 1))
            return Decision(query, PURE, RULE_N1, witness=gens)
        reason = ABOVE_UPPER_BOUND if b > a else BELOW_LOWER_BOUND
        return Decision(query, NOT_PURE, RULE_N1, reason)
    if n == 2:
        if 2 * b < a:
            return Decision(query, NOT_PURE, RULE_SOCLE2, BELOW_LOWER_BOUND)
        if b > comb(a + 1, 2):
            return Decision(query, NOT_PURE, RULE_SOCLE2, ABOVE_UPPER_BOUND)
        return Decision(query, PURE, RULE_SOCLE2, witness=witness_socle2(a, b))
    if b > a:
        return Decision(query, NOT_PURE, RULE_NO_GROWTH, ABOVE_UPPER_BOUND)
    if n == 3:
        if 3 * b < a:
            return Decision(query, NOT_PURE, RULE_SOCLE3, BELOW_LOWER_BOUND)
        return Decision(query, PURE, RULE_SOCLE3, witness=witness_socle3(a, b))
    if 2 * b < a:
        return Decision(query, NOT_PURE, RULE_PQ, EXCEEDS_TWICE_SOCLE)
    return Decision(query, PURE, RULE_FLAT, witness=witness_flat(n, a, b))


@dataclass(frozen=True)
class PQProfile:
    generators: GeneratorSet
    p: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def sum_p(self) -> int:
        return sum(self.p)

    @property
    def sum_q(self) -> int:
        return sum(self.q)


def pq_profile(gens: GeneratorSet) -> PQProfile:
    """Per-generator counts of variables and quadratic divisors not seen earlier in the list."""
    seen_vars: set[int] = set()
    seen_quads: set[Monomial] = set()
    p, q = [], []
    for u in gens:
        vars_u = support(u)
        quads = divisors_of_degree(u, 2) if u.degree >= 2 else set()
        p.append(len(vars_u - seen_vars))
        q.append(len(quads - seen_quads))
        seen_vars |= vars_u
        seen_quads |= quads
    return PQProfile(tuple(gens), tuple(p), tuple(q))


def check_generator_shape(gens: GeneratorSet, n: int) -> bool:
    """True iff every generator is x^n or x*y^(n-1) with x != y."""
    for g in gens:
        if g.degree != n:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {n}")
    for g in gens:
        exps = sorted(e for _, e in g.exponents)
        if exps != [n] and exps != sorted([1, n - 1]):
            return False
    return True
