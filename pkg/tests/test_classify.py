import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_hvector
from pure_o.classify import (
    FlatQuery,
    WitnessRangeError,
    check_generator_shape,
    decide_flat,
    flat_plan,
    pq_profile,
    socle3_plan,
    witness_flat,
    witness_socle2,
    witness_socle3,
)
from pure_o.decision import PURE
from pure_o.monomial import Monomial, divisors_of_degree, parse_monomial, support
from pure_o.order_ideal import closure, h_vector, is_pure
from strategies import equal_degree_sets


def G(*texts):
    return tuple(parse_monomial(t) for t in texts)


@pytest.mark.parametrize("n,a,b,verdict,reason,rule", [
    (4, 4, 2, "Pure", None, "theorem-flat"),
    (4, 5, 2, "NotPure", "ExceedsTwiceSocle", "lemma-1.3"),
    (3, 4, 5, "NotPure", "AboveUpperBound", "lemma-1.1"),
    (2, 3, 6, "Pure", None, "prop-2.1-i"),
    (2, 3, 7, "NotPure", "AboveUpperBound", "prop-2.1-i"),
    (2, 5, 2, "NotPure", "BelowLowerBound", "prop-2.1-i"),
    (3, 7, 2, "NotPure", "BelowLowerBound", "prop-2.1-ii"),
    (3, 7, 3, "Pure", None, "prop-2.1-ii"),
    (6, 3, 4, "NotPure", "AboveUpperBound", "lemma-1.1"),
    (1, 3, 3, "Pure", None, "n1-convention"),
    (1, 3, 2, "NotPure", "BelowLowerBound", "n1-convention"),
])
def test_decide_flat(n, a, b, verdict, reason, rule):
    d = decide_flat(FlatQuery(n, a, b))
    assert (d.verdict, d.reason, d.rule) == (verdict, reason, rule)
    if verdict == PURE:
        assert h_vector(closure(d.witness)) == FlatQuery(n, a, b).sequence


def test_flat_query_validation():
    with pytest.raises(ValueError):
        FlatQuery(0, 1, 1)
    with pytest.raises(ValueError):
        FlatQuery(3, 0, 1)
    assert FlatQuery(4, 5, 3).sequence == (1, 5, 5, 5, 3)
    assert FlatQuery(1, 2, 2).sequence == (1, 2)


def test_decision_json_key_order():
    d = decide_flat(FlatQuery(4, 5, 2))
    assert d.to_json() == '{"query":{"n":4,"a":5,"b":2},"verdict":"NotPure","rule":"lemma-1.3","reason":"ExceedsTwiceSocle"}'
    d = decide_flat(FlatQuery(2, 4, 2))
    assert d.to_json() == '{"query":{"n":2,"a":4,"b":2},"verdict":"Pure","rule":"prop-2.1-i","witness":["x1*x2","x3*x4"]}'


def test_witness_flat_examples():
    assert witness_flat(4, 5, 3) == G("x1*x2^3", "x3*x4^3", "x5^4")
    assert witness_flat(4, 3, 3) == G("x1^4", "x2^4", "x3^4")
    assert witness_flat(2, 4, 2) == G("x1*x2", "x3*x4")
    assert brute_hvector(witness_flat(4, 5, 3)) == (1, 5, 5, 5, 3)
    assert brute_hvector(witness_flat(4, 3, 3)) == (1, 3, 3, 3, 3)
    assert brute_hvector(witness_flat(2, 4, 2)) == (1, 4, 2)


def test_witness_socle3_examples():
    assert witness_socle3(7, 3) == G("x1*x2*x3", "x4*x5*x6", "x7^3")
    assert witness_socle3(4, 3) == G("x1*x2^2", "x3^3", "x4^3")
    assert witness_socle3(3, 1) == G("x1*x2*x3")
    assert brute_hvector(witness_socle3(7, 3)) == (1, 7, 7, 3)
    assert brute_hvector(witness_socle3(4, 3)) == (1, 4, 4, 3)


def test_witness_socle2_examples():
    assert witness_socle2(5, 3) == G("x1*x2", "x3*x4", "x5^2")
    assert brute_hvector(witness_socle2(5, 3)) == (1, 5, 3)
    assert set(witness_socle2(3, 6)) == set(G("x1^2", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"))
    with pytest.raises(WitnessRangeError) as info:
        witness_socle2(4, 1)
    assert info.value.reason == "BelowLowerBound"


def test_witness_socle2_fill_order():
    # base pairs, then (i, j) lexicographic with i <= j, skipping what is present
    assert witness_socle2(3, 4) == G("x1*x2", "x3^2", "x1^2", "x1*x3")


@pytest.mark.parametrize("fn,args,reason", [
    (witness_flat, (4, 5, 2), "ExceedsTwiceSocle"),
    (witness_flat, (4, 3, 4), "AboveUpperBound"),
    (witness_socle3, (7, 2), "BelowLowerBound"),
    (witness_socle3, (3, 4), "AboveUpperBound"),
    (witness_socle2, (3, 7), "AboveUpperBound"),
])
def test_witness_range_errors(fn, args, reason):
    with pytest.raises(WitnessRangeError) as info:
        fn(*args)
    assert info.value.reason == reason


def test_partition_plans():
    for a in range(1, 30):
        for b in range(-(-a // 2), a + 1):
            plan = flat_plan(a, b)
            assert (plan.a, plan.b) == (a, b)
            assert plan.parts == {2: a - b, 1: 2 * b - a}
        for b in range(-(-a // 3), a + 1):
            plan = socle3_plan(a, b)
            assert (plan.a, plan.b) == (a, b)
            assert min(plan.parts.values()) >= 0
            assert plan.parts[2] <= 1  # t1 maximal leaves at most one y*z^2


def test_witnesses_brute_force_small():
    for n in (2, 3, 4):
        for a in range(1, 7):
            for b in range(-(-a // 2), a + 1):
                assert brute_hvector(witness_flat(n, a, b)) == (1,) + (a,) * (n - 1) + (b,)
    for a in range(1, 7):
        for b in range(-(-a // 3), a + 1):
            assert brute_hvector(witness_socle3(a, b)) == (1, a, a, b)
        for b in range(-(-a // 2), comb(a + 1, 2) + 1):
            assert brute_hvector(witness_socle2(a, b)) == (1, a, b)


def test_witnesses_deterministic():
    assert [str(m) for m in witness_flat(5, 7, 4)] == [str(m) for m in witness_flat(5, 7, 4)]
    assert witness_socle2(6, 12) == witness_socle2(6, 12)


def test_decide_flat_no_growth_above_degree_two():
    for n in range(3, 9):
        for a in range(1, 15):
            for b in range(1, 20):
                d = decide_flat(FlatQuery(n, a, b))
                if d.verdict == PURE:
                    assert b <= a
                    assert is_pure(closure(d.witness))


def _pq_direct(gens):
    """Definition-level counts using plain sets of exponent tuples."""
    seen_v, seen_q, p, q = set(), set(), [], []
    for u in gens:
        e = dict(u.exponents)
        vs = set(e)
        quads = set()
        for i, j in itertools.combinations_with_replacement(sorted(vs), 2):
            if i != j or e[i] >= 2:
                quads.add((i, j))
        p.append(len(vs - seen_v))
        q.append(len(quads - seen_q))
        seen_v |= vs
        seen_q |= quads
    return tuple(p), tuple(q)


def test_pq_profile_examples():
    prof = pq_profile(G("x1*x2^3", "x3*x4^3", "x5^4"))
    assert (prof.p, prof.q) == ((2, 2, 1), (2, 2, 1))
    assert prof.sum_p == prof.sum_q == 5
    assert _pq_direct(prof.generators) == (prof.p, prof.q)
    prof = pq_profile(G("x1*x2*x3*x4"))
    assert (prof.p, prof.q) == ((4,), (6,))
    prof = pq_profile(G("x1^3"))
    assert (prof.p, prof.q) == ((1,), (1,))


@given(equal_degree_sets(degrees=(2, 3, 4, 5)))
def test_pq_sums_match_hvector(case):
    n, gens = case
    prof = pq_profile(gens)
    h = h_vector(closure(gens))
    assert prof.sum_p == h[1]
    assert prof.sum_q == h[2]
    assert (prof.p, prof.q) == _pq_direct(gens)


@given(st.dictionaries(st.integers(1, 8), st.integers(1, 5), min_size=1, max_size=6))
def test_single_monomial_q_vs_p(exps):
    u = Monomial.from_dict(exps)
    if u.degree < 3:
        return
    prof = pq_profile((u,))
    assert prof.q[0] >= prof.p[0]
    if u.degree >= 4 and prof.p[0] >= 3:
        assert prof.q[0] > prof.p[0]


def test_generator_shape():
    assert check_generator_shape(G("x1*x2^3", "x3^4"), 4)
    assert not check_generator_shape(G("x1*x2*x3^2"), 4)
    assert not check_generator_shape(G("x1^2*x2^2"), 4)
    assert check_generator_shape(G("x1*x2", "x3^2"), 2)
    with pytest.raises(ValueError):
        check_generator_shape(G("x1*x2^3", "x3^3"), 4)


def test_shape_witnesses_from_flat():
    for n in range(4, 8):
        for a in range(1, 12):
            for b in range(-(-a // 2), a + 1):
                assert check_generator_shape(witness_flat(n, a, b), n)
