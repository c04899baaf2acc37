import numpy as np
import pytest

from pure_o import _kernels
from pure_o.search import _space, decide_pure_o_sequence, enumerate_pure_hvectors

requires_numba = pytest.mark.skipif(_kernels.numba is None, reason="numba not installed")


@pytest.fixture
def numpy_backend(monkeypatch):
    monkeypatch.setenv("PURE_O_NO_JIT", "1")
    assert not _kernels.jit_enabled()


def test_env_flag(monkeypatch):
    monkeypatch.setenv("PURE_O_NO_JIT", "1")
    assert not _kernels.jit_enabled()
    monkeypatch.setenv("PURE_O_NO_JIT", "0")
    assert _kernels.jit_enabled() == (_kernels.numba is not None)


def _rank_lists(space, k):
    return [np.array(c) for c in __import__("itertools").combinations(range(space.ncand), k)]


@requires_numba
@pytest.mark.parametrize("s,n,k", [(3, 2, 2), (3, 3, 3), (4, 2, 3), (4, 3, 2)])
def test_canonical_checks_agree(s, n, k):
    space = _space(s, n)
    for chosen in _rank_lists(space, k):
        assert _kernels.canonical_check(chosen, space.perm_img, jit=False) == \
            _kernels.canonical_check(chosen, space.perm_img, jit=True)


@pytest.mark.parametrize("s,n,k", [(3, 2, 2), (3, 3, 2), (4, 2, 2)])
def test_one_canonical_per_orbit(s, n, k):
    space = _space(s, n)
    canon = [c for c in _rank_lists(space, k) if _kernels.canonical_check(c, space.perm_img)]
    # brute-force orbit count via sorted image tuples under every permutation
    orbits = set()
    for c in _rank_lists(space, k):
        images = [tuple(sorted(space.perm_img[p, c])) for p in range(space.perm_img.shape[0])]
        orbits.add(min(images + [tuple(c)]))
    assert len(canon) == len(orbits)
    assert {tuple(c) for c in canon} == orbits


@requires_numba
def test_backends_agree_on_decisions(numpy_backend, monkeypatch):
    cases = [(1, 5, 5, 5, 3), (1, 6, 6, 6, 7), (1, 3, 3, 3, 1), (1, 4, 7, 9), (1, 5, 5, 5, 5, 6)]
    slow = [decide_pure_o_sequence(h, pq_filter=False) for h in cases]
    monkeypatch.setenv("PURE_O_NO_JIT", "0")
    fast = [decide_pure_o_sequence(h, pq_filter=False) for h in cases]
    assert [d.to_json() for d in slow] == [d.to_json() for d in fast]
    assert [d.nodes for d in slow] == [d.nodes for d in fast]


@requires_numba
def test_backends_agree_on_enumeration(numpy_backend, monkeypatch):
    slow = enumerate_pure_hvectors(3, 4, 4)
    monkeypatch.setenv("PURE_O_NO_JIT", "0")
    assert enumerate_pure_hvectors(3, 4, 4) == slow


def test_perm_table_is_a_relabelling():
    space = _space(3, 2)
    vecs = space.vectors
    for p in range(space.perm_img.shape[0]):
        img = space.perm_img[p]
        assert sorted(img) == list(range(space.ncand))
        # a relabelling preserves the multiset of exponents
        for r in range(space.ncand):
            assert sorted(vecs[r]) == sorted(vecs[img[r]])
