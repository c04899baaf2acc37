"""Exhaustive search oracle for pure O-sequences.

A sequence ``h = (1, h_1, ..., h_n)`` is pure exactly when some set of ``h_n``
distinct degree-n monomials on ``h_1`` variables has closure with h-vector
``h``.  The search enumerates such sets one variable-permutation orbit at a
time (see ``_kernels``) and prunes on the partial degree strata.
"""
from __future__ import annotations

import functools
import itertools
import json
import logging
import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .classify import FlatQuery, decide_flat
from .decision import (
    BELOW_LOWER_BOUND,
    EXCEEDS_TWICE_SOCLE,
    INCONCLUSIVE,
    MACAULAY_VIOLATION,
    NOT_PURE,
    PURE,
    SEARCH_EXHAUSTED,
    Decision,
    dumps,
)
from .macaulay import is_o_sequence
from .monomial import UNIT, Monomial, format_monomial, monomials_of_degree, parse_monomial
from .order_ideal import GeneratorSet, HVector, closure, h_vector, is_pure, validate_hvector

log = logging.getLogger(__name__)

RULE_SEARCH = "exhaustive-search"
RULE_MACAULAY = "macaulay"
RULE_COVERAGE = "variable-coverage"
RULE_PQ_BOUND = "lemma-1.3"

NODE_BUDGET = "NodeBudget"
TIME_BUDGET = "TimeBudget"
VARIABLE_LIMIT = "VariableLimit"
GENERATOR_LIMIT = "GeneratorLimit"

CHUNK_STEPS = 1 << 18
RECORD_CAP = 1 << 16
MAX_PERM_TABLE = 60_000_000


class GuardrailError(ValueError):
    """Requested enumeration is outside the supported desk-scale range."""


class BudgetExceeded(RuntimeError):
    def __init__(self, reason: str):
        super().__init__(f"search budget exhausted: {reason}")
        self.reason = reason


@dataclass(frozen=True)
class SearchLimits:
    max_variables: int = 8
    max_generators: int = 64
    node_budget: int = 10**7
    time_budget: float = 60.0

    def __post_init__(self):
        for name in ("max_variables", "max_generators", "node_budget", "time_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class CatalogEntry:
    h: HVector
    witness: GeneratorSet
    variables_used: int
    generator_count: int
    nodes: int

    def to_json(self) -> str:
        return dumps({
            "h": list(self.h),
            "witness": [format_monomial(m) for m in self.witness],
            "vars": self.variables_used,
            "gens": self.generator_count,
            "nodes": self.nodes,
        })

    @classmethod
    def from_json(cls, line: str) -> "CatalogEntry":
        obj = json.loads(line)
        return cls(
            h=tuple(obj["h"]),
            witness=tuple(parse_monomial(t) for t in obj["witness"]),
            variables_used=obj["vars"],
            generator_count=obj["gens"],
            nodes=obj["nodes"],
        )


# ---------------------------------------------------------------- canonical form

def _key(vectors: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(vectors, reverse=True))


def canonical_form(gens: Iterable[Monomial]) -> GeneratorSet:
    """Orbit representative under relabelling of the variables.

    Variables are renumbered ``1..s`` and the relabelling chosen so that the
    generators' exponent vectors, sorted in descending lexicographic order,
    form the lexicographically largest list.  The generators come back in
    that order.  Cost grows as ``s!``.
    """
    gens = list(gens)
    used = sorted({v for g in gens for v, _ in g.exponents})
    pos = {v: i for i, v in enumerate(used)}
    s = len(used)
    vecs = []
    for g in gens:
        vec = [0] * s
        for v, e in g.exponents:
            vec[pos[v]] = e
        vecs.append(tuple(vec))
    best = None
    for perm in itertools.permutations(range(s)):
        key = _key(tuple(vec[p] for p in perm) for vec in vecs)
        if best is None or key > best:
            best = key
    return tuple(Monomial.from_vector(v) for v in best)


# ---------------------------------------------------------------- candidate space

class _Space:
    """Degree-n monomials on ``s`` variables with divisor and permutation tables."""

    def __init__(self, s: int, n: int):
        self.s, self.n = s, n
        cands = monomials_of_degree(s, n)
        self.vectors = cands
        self.ncand = len(cands)
        ids: dict[tuple[int, ...], int] = {}
        id_deg: list[int] = []
        for d in range(1, n):
            for vec in monomials_of_degree(s, d):
                ids[vec] = len(id_deg)
                id_deg.append(d)
        div_ptr = [0]
        div_ids: list[int] = []
        maxnew = [0] * max(n, 1)
        for vec in cands:
            per_degree = [0] * max(n, 1)
            for sub in itertools.product(*(range(e + 1) for e in vec)):
                d = sum(sub)
                if 1 <= d < n:
                    div_ids.append(ids[sub])
                    per_degree[d] += 1
            div_ptr.append(len(div_ids))
            maxnew = [max(x, y) for x, y in zip(maxnew, per_degree)]
        self.div_ptr = np.array(div_ptr, dtype=np.int64)
        self.div_ids = np.array(div_ids, dtype=np.int64)
        self.id_deg = np.array(id_deg, dtype=np.int64)
        self.maxnew = np.array(maxnew, dtype=np.int64)
        self.perm_img = self._perm_table()

    def _perm_table(self) -> np.ndarray:
        s, n, ncand = self.s, self.n, self.ncand
        nperm = math.factorial(s) - 1
        if nperm * ncand > MAX_PERM_TABLE:
            raise GuardrailError(f"permutation table for s={s}, n={n} is too large")
        if nperm == 0:
            return np.zeros((0, ncand), dtype=np.int32)
        mat = np.array(self.vectors, dtype=np.int64).reshape(ncand, s)
        weights = (n + 1) ** np.arange(s - 1, -1, -1, dtype=np.int64)
        codes = mat @ weights  # descending, because ranks follow descending lex order
        asc = codes[::-1]
        perms = np.array(list(itertools.permutations(range(s)))[1:], dtype=np.int64)
        out = np.empty((nperm, ncand), dtype=np.int32)
        step = max(1, 4_000_000 // max(1, ncand * s))
        for lo in range(0, nperm, step):
            block = perms[lo:lo + step]
            img = mat[:, block].transpose(1, 0, 2) @ weights
            out[lo:lo + step] = ncand - 1 - np.searchsorted(asc, img)
        return out

    def monomials(self, ranks: Iterable[int]) -> GeneratorSet:
        return tuple(Monomial.from_vector(self.vectors[r]) for r in ranks)


@functools.lru_cache(maxsize=32)
def _space(s: int, n: int) -> _Space:
    return _Space(s, n)


# ---------------------------------------------------------------- subtree driver

class _Control:
    def __init__(self, limits: SearchLimits):
        self.lock = threading.Lock()
        self.nodes = 0
        self.node_budget = limits.node_budget
        self.deadline = time.monotonic() + limits.time_budget
        self.winner = math.inf

    def charge(self, delta: int) -> None:
        with self.lock:
            self.nodes += delta

    def stop_reason(self, root: int) -> str | None:
        if root > self.winner:
            return "cancelled"
        if self.nodes >= self.node_budget:
            return NODE_BUDGET
        if time.monotonic() > self.deadline:
            return TIME_BUDGET
        return None

    def claim(self, root: int) -> None:
        with self.lock:
            self.winner = min(self.winner, root)


@dataclass
class _RootResult:
    root: int
    status: str  # "exhausted", "found", "cancelled" or a budget name
    nodes: int
    chosen: tuple[int, ...] = ()
    records: dict | None = None


def _run_root(space: _Space, root: int, mode: int, goal: int, target: np.ndarray,
              ctl: _Control, kernel) -> _RootResult:
    ndeg = max(space.n, 1)
    chosen = np.zeros(goal, dtype=np.int64)
    nxt = np.zeros(goal + 1, dtype=np.int64)
    nxt[0] = root
    scal = np.zeros(2, dtype=np.int64)
    counts = np.zeros(len(space.id_deg), dtype=np.int32)
    strata = np.zeros(ndeg, dtype=np.int64)
    strata[0] = 1
    cap = RECORD_CAP if mode == _kernels.MODE_ENUMERATE else 1
    rec_strata = np.zeros((cap, ndeg + 1), dtype=np.int64)
    rec_sets = np.zeros((cap, goal), dtype=np.int64)
    rec_nodes = np.zeros(cap, dtype=np.int64)
    records: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
    while True:
        before = int(scal[_kernels.NODES])
        status, nrec = kernel(
            chosen, nxt, scal, counts, strata, space.div_ptr, space.div_ids, space.id_deg,
            space.perm_img, target, space.maxnew, goal, root + 1, space.ncand, ndeg, mode,
            CHUNK_STEPS, rec_strata, rec_sets, rec_nodes,
        )
        ctl.charge(int(scal[_kernels.NODES]) - before)
        if nrec:
            _merge_records(records, rec_strata[:nrec], rec_sets[:nrec], rec_nodes[:nrec])
        nodes = int(scal[_kernels.NODES])
        if status == _kernels.FOUND:
            ctl.claim(root)
            return _RootResult(root, "found", nodes, tuple(int(x) for x in chosen))
        if status == _kernels.EXHAUSTED:
            return _RootResult(root, "exhausted", nodes, records=records)
        reason = ctl.stop_reason(root)
        if reason is not None:
            return _RootResult(root, reason, nodes)


def _merge_records(records, rows, sets, nodes) -> None:
    uniq, first = np.unique(rows, axis=0, return_index=True)
    for row, i in zip(uniq, first):
        h = tuple(int(x) for x in row)
        if h not in records:
            records[h] = (int(nodes[i]), tuple(int(x) for x in sets[i] if x >= 0))


def _run_all(space: _Space, mode: int, goal: int, target: np.ndarray, limits: SearchLimits,
             jobs: int) -> list[_RootResult]:
    kernel = _kernels.get_kernel()
    ctl = _Control(limits)
    roots = range(space.ncand)

    def task(r: int) -> _RootResult:
        if mode == _kernels.MODE_DECIDE and r > ctl.winner:
            return _RootResult(r, "cancelled", 0)
        reason = ctl.stop_reason(r)
        if reason is not None:
            return _RootResult(r, reason, 0)
        return _run_root(space, r, mode, goal, target, ctl, kernel)

    if jobs <= 1:
        results = []
        for r in roots:
            res = task(r)
            results.append(res)
            if res.status != "exhausted":
                break
        return results
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(task, roots))


# ---------------------------------------------------------------- decisions

def _pq_bound_violated(h: HVector) -> bool:
    # With h_1 = h_2 and n >= 4 every generator has support <= 2, so h_1 <= 2 h_n.
    n = len(h) - 1
    return n >= 4 and h[1] == h[2] and h[1] > 2 * h[n]


def decide_pure_o_sequence(h: Sequence[int], limits: SearchLimits | None = None, *,
                           jobs: int = 1, pq_filter: bool = True) -> Decision:
    """Decide purity of ``h`` by search; Pure answers carry a canonical witness.

    ``pq_filter`` enables the h_1 <= 2 h_n shortcut for h_1 = h_2, n >= 4.
    Theorem sweeps switch it off so the oracle does not assume what it checks.
    """
    h = validate_hvector(h)
    limits = limits or SearchLimits()
    query = {"h": list(h)}
    n = len(h) - 1
    if n == 0:
        return Decision(query, PURE, RULE_SEARCH, witness=(UNIT,))
    if not is_o_sequence(h):
        return Decision(query, NOT_PURE, RULE_MACAULAY, MACAULAY_VIOLATION)
    a, b = h[1], h[n]
    if a > n * b:
        return Decision(query, NOT_PURE, RULE_COVERAGE, BELOW_LOWER_BOUND)
    if pq_filter and _pq_bound_violated(h):
        return Decision(query, NOT_PURE, RULE_PQ_BOUND, EXCEEDS_TWICE_SOCLE)
    if a > limits.max_variables:
        return Decision(query, INCONCLUSIVE, RULE_SEARCH, VARIABLE_LIMIT)
    if b > limits.max_generators:
        return Decision(query, INCONCLUSIVE, RULE_SEARCH, GENERATOR_LIMIT)
    try:
        space = _space(a, n)
    except GuardrailError:
        return Decision(query, INCONCLUSIVE, RULE_SEARCH, VARIABLE_LIMIT)
    target = np.array(h[:max(n, 1)], dtype=np.int64)
    results = _run_all(space, _kernels.MODE_DECIDE, b, target, limits, jobs)
    nodes = 0
    for res in sorted(results, key=lambda r: r.root):
        nodes += res.nodes
        if res.status == "found":
            witness = space.monomials(res.chosen[:b])
            if h_vector(closure(witness)) != h or not is_pure(closure(witness)):
                raise AssertionError(f"search produced an invalid witness for {h}")
            return Decision(query, PURE, RULE_SEARCH, witness=witness, nodes=nodes)
        if res.status != "exhausted":
            return Decision(query, INCONCLUSIVE, RULE_SEARCH, res.status, nodes=nodes)
    return Decision(query, NOT_PURE, RULE_SEARCH, SEARCH_EXHAUSTED, nodes=nodes)


# ---------------------------------------------------------------- enumeration

def enumerate_pure_hvectors(s: int, n: int, g: int, limits: SearchLimits | None = None, *,
                            jobs: int = 1) -> list[CatalogEntry]:
    """Every h-vector of an order ideal generated by 1..g degree-n monomials on <= s variables."""
    if s < 1 or n < 1 or g < 1:
        raise GuardrailError("s, n and g must be positive")
    if s > 7 or n > 12 or g > 16:
        raise GuardrailError(f"enumeration (s={s}, n={n}, g={g}) exceeds desk-scale limits")
    limits = limits or SearchLimits(node_budget=10**9, time_budget=3600.0)
    space = _space(s, n)
    g = min(g, space.ncand)
    target = np.zeros(max(n, 1), dtype=np.int64)
    results = _run_all(space, _kernels.MODE_ENUMERATE, g, target, limits, jobs)
    merged: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
    offset = 0
    for res in sorted(results, key=lambda r: r.root):
        if res.status != "exhausted":
            raise BudgetExceeded(res.status)
        for h, (node, ranks) in res.records.items():
            node += offset
            if h not in merged or node < merged[h][0]:
                merged[h] = (node, ranks)
        offset += res.nodes
    entries = []
    for h in sorted(merged):
        node, ranks = merged[h]
        witness = canonical_form(space.monomials(ranks))
        entries.append(CatalogEntry(h, witness, h[1], len(ranks), node))
    return entries


def write_catalog(entries: Iterable[CatalogEntry], path: str | Path) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        for e in entries:
            fh.write(e.to_json() + "\n")


def load_catalog(path: str | Path) -> list[CatalogEntry]:
    """Read a line-JSON catalog; first entry wins per h-vector, result sorted by h."""
    seen: dict[HVector, CatalogEntry] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                e = CatalogEntry.from_json(line)
                seen.setdefault(e.h, e)
    return [seen[h] for h in sorted(seen)]


# ---------------------------------------------------------------- theorem sweeps

def verify_theorem_range(n: int, a_max: int, b_max: int, limits: SearchLimits | None = None, *,
                         jobs: int = 1, b_limit=None) -> dict:
    """Compare the search oracle with the closed-form rule on every (a, b) cell.

    ``b_limit(a)`` optionally shrinks the b range per row.
    """
    if n < 2:
        raise ValueError("sweeps need n >= 2")
    cells, disagreements, inconclusive = [], [], []
    agreements = 0
    for a in range(1, a_max + 1):
        top = b_max if b_limit is None else min(b_max, b_limit(a))
        for b in range(1, top + 1):
            q = FlatQuery(n, a, b)
            expected = decide_flat(q)
            got = decide_pure_o_sequence(q.sequence, limits, jobs=jobs, pq_filter=False)
            cell = {"a": a, "b": b, "expected": expected.verdict, "oracle": got.verdict,
                    "rule": got.rule, "nodes": got.nodes}
            cells.append(cell)
            if got.verdict == INCONCLUSIVE:
                inconclusive.append([a, b])
            elif got.verdict == expected.verdict:
                agreements += 1
            else:
                disagreements.append([a, b])
    return {
        "n": n, "a_max": a_max, "b_max": b_max,
        "agreements": agreements, "disagreements": disagreements,
        "inconclusive": inconclusive, "cells": cells,
    }
