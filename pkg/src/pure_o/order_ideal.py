"""Order ideals of monomials: closure, h-vectors, maximal elements, purity."""
from __future__ import annotations

from typing import Iterable, Sequence

from .monomial import Monomial, format_monomial, parse_monomial

GeneratorSet = tuple[Monomial, ...]
HVector = tuple[int, ...]


class HVectorError(ValueError):
    """Malformed sequence text or an h-vector that violates h_0 = 1."""


class ZeroEntryError(HVectorError):
    """A sequence entry is zero or negative."""


def generator_set(gens: Iterable[Monomial]) -> GeneratorSet:
    """Validate and freeze generators, keeping their order."""
    out = tuple(gens)
    if not out:
        raise ValueError("a generator set must be nonempty")
    if len(set(out)) != len(out):
        raise ValueError("generators must be distinct")
    return out


def parse_generators(text: str) -> GeneratorSet:
    """Read the one-monomial-per-line format; ``#`` comments and blank lines skipped."""
    gens: list[Monomial] = []
    seen: dict[Monomial, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            m = parse_monomial(line)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if m in seen:
            raise ValueError(f"line {lineno}: duplicate monomial {line!r} (first on line {seen[m]})")
        seen[m] = lineno
        gens.append(m)
    if not gens:
        raise ValueError("no generators found")
    return tuple(gens)


def format_generators(gens: Iterable[Monomial]) -> str:
    return "".join(format_monomial(g) + "\n" for g in gens)


def parse_hvector(text: str) -> HVector:
    """Parse ``"1,5,5,5,3"``; every entry must be a positive integer and h_0 = 1."""
    parts = text.split(",")
    values = []
    for i, part in enumerate(parts):
        try:
            values.append(int(part))
        except ValueError:
            raise HVectorError(f"entry {i} ({part!r}) is not an integer") from None
    return validate_hvector(values)


def validate_hvector(h: Sequence[int]) -> HVector:
    h = tuple(int(x) for x in h)
    if not h:
        raise HVectorError("empty sequence")
    for i, x in enumerate(h):
        if x <= 0:
            raise ZeroEntryError(f"entry {i} is {x}; entries must be positive")
    if h[0] != 1:
        raise HVectorError(f"h_0 must be 1, got {h[0]}")
    return h


class OrderIdeal:
    """A finite downward-closed set of monomials, stored by degree."""

    def __init__(self, strata: dict[int, frozenset[Monomial]]):
        self.strata = strata

    @property
    def members(self) -> frozenset[Monomial]:
        return frozenset().union(*self.strata.values())

    @property
    def top_degree(self) -> int:
        return max(self.strata)

    def __contains__(self, m: Monomial) -> bool:
        return m in self.strata.get(m.degree, ())

    def __len__(self) -> int:
        return sum(len(s) for s in self.strata.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, OrderIdeal) and self.strata == other.strata

    def __repr__(self) -> str:
        return f"OrderIdeal(h={h_vector(self)})"


def _lower(m: Monomial) -> list[Monomial]:
    out = []
    for i, (v, e) in enumerate(m.exponents):
        exps = list(m.exponents)
        if e == 1:
            del exps[i]
        else:
            exps[i] = (v, e - 1)
        out.append(Monomial(tuple(exps)))
    return out


def closure(gens: Iterable[Monomial]) -> OrderIdeal:
    gens = list(gens)
    if not gens:
        raise ValueError("closure of an empty generator set")
    top = max(g.degree for g in gens)
    by_degree: dict[int, set[Monomial]] = {d: set() for d in range(top + 1)}
    for g in gens:
        by_degree[g.degree].add(g)
    # walk down one degree at a time; each stratum is deduplicated before expanding
    for d in range(top, 0, -1):
        below = by_degree[d - 1]
        for m in by_degree[d]:
            below.update(_lower(m))
    return OrderIdeal({d: frozenset(s) for d, s in by_degree.items()})


def h_vector(ideal: OrderIdeal) -> HVector:
    return tuple(len(ideal.strata[d]) for d in range(ideal.top_degree + 1))


def maximal_elements(ideal: OrderIdeal) -> GeneratorSet:
    """Members that divide no other member, sorted by degree then printed form."""
    covered: set[Monomial] = set()
    for d in range(ideal.top_degree, 0, -1):
        for m in ideal.strata[d]:
            covered.update(_lower(m))
    maxi = [m for s in ideal.strata.values() for m in s if m not in covered]
    return tuple(sorted(maxi, key=lambda m: (-m.degree, sorted(m.exponents))))


def is_pure(ideal: OrderIdeal) -> bool:
    return len({m.degree for m in maximal_elements(ideal)}) == 1


def hvector_of(gens: Iterable[Monomial]) -> HVector:
    return h_vector(closure(gens))


def is_downward_closed(members: Iterable[Monomial]) -> bool:
    """Brute-force check used by tests: every divisor of a member is a member."""
    members = set(members)
    return all(v in members for u in members for v in _lower(u))
