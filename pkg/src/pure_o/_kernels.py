"""Inner loops of the orderly generator search.

The same depth-first body is built twice: once under ``numba.njit`` and once
as plain Python whose canonicity test is vectorised with numpy.  Set
``PURE_O_NO_JIT=1`` (or run without numba installed) to make the numpy path
the default.

Candidates are the degree-n monomials on ``s`` variables, indexed by rank in
lexicographically descending exponent order.  A node is a strictly increasing
rank list; it is kept only when no variable permutation maps it to a
lexicographically smaller sorted rank list, which gives one node per orbit
and is hereditary under dropping the last rank.
"""
from __future__ import annotations

import functools
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

MODE_DECIDE = 0
MODE_ENUMERATE = 1

EXHAUSTED = 0
FOUND = 1
PAUSED = 2

# scalar state slots
K, NODES = 0, 1


def jit_enabled() -> bool:
    flag = os.environ.get("PURE_O_NO_JIT", "").strip().lower()
    return numba is not None and flag in ("", "0", "false", "no")


def _add(c, counts, strata, div_ptr, div_ids, id_deg):
    for t in range(div_ptr[c], div_ptr[c + 1]):
        g = div_ids[t]
        if counts[g] == 0:
            strata[id_deg[g]] += 1
        counts[g] += 1


def _remove(c, counts, strata, div_ptr, div_ids, id_deg):
    for t in range(div_ptr[c], div_ptr[c + 1]):
        g = div_ids[t]
        counts[g] -= 1
        if counts[g] == 0:
            strata[id_deg[g]] -= 1


def _canonical_loops(chosen, k, perm_img, img):
    for p in range(perm_img.shape[0]):
        for j in range(k):
            img[j] = perm_img[p, chosen[j]]
        for j in range(1, k):
            x = img[j]
            t = j - 1
            while t >= 0 and img[t] > x:
                img[t + 1] = img[t]
                t -= 1
            img[t + 1] = x
        for j in range(k):
            if img[j] < chosen[j]:
                return False
            if img[j] > chosen[j]:
                break
    return True


def _canonical_numpy(chosen, k, perm_img, img):
    if perm_img.shape[0] == 0:
        return True
    head = chosen[:k]
    imgs = np.sort(perm_img[:, head], axis=1)
    diff = imgs - head
    nz = diff != 0
    first = nz.argmax(axis=1)
    lead = diff[np.arange(diff.shape[0]), first]
    return not np.any(nz.any(axis=1) & (lead < 0))


def _feasible(strata, target, maxnew, ndeg, left):
    for d in range(1, ndeg):
        if strata[d] > target[d]:
            return False
        if target[d] - strata[d] > left * maxnew[d]:
            return False
    return True


def _build(jit: bool):
    deco = numba.njit(nogil=True) if jit else (lambda f: f)
    add = deco(_add)
    remove = deco(_remove)
    feasible = deco(_feasible)
    canonical = deco(_canonical_loops) if jit else _canonical_numpy

    def run(chosen, nxt, scal, counts, strata, div_ptr, div_ids, id_deg, perm_img,
            target, maxnew, goal, root_hi, ncand, ndeg, mode, max_steps,
            rec_strata, rec_sets, rec_nodes):
        """Advance the search by at most ``max_steps`` generated nodes.

        Returns ``(status, records_written)``; state lives in the arrays so a
        PAUSED call can be resumed.
        """
        k = scal[K]
        nodes = scal[NODES]
        img = np.empty(goal, dtype=np.int64)
        steps = 0
        nrec = 0
        cap = rec_nodes.shape[0]
        while True:
            if steps >= max_steps or nrec >= cap:
                scal[K] = k
                scal[NODES] = nodes
                return PAUSED, nrec
            c = nxt[k]
            hi = root_hi if k == 0 else ncand
            if k >= goal or c >= hi or (mode == MODE_DECIDE and ncand - c < goal - k):
                if k == 0:
                    scal[K] = k
                    scal[NODES] = nodes
                    return EXHAUSTED, nrec
                k -= 1
                remove(chosen[k], counts, strata, div_ptr, div_ids, id_deg)
                nxt[k] = chosen[k] + 1
                continue
            nxt[k] = c + 1
            steps += 1
            nodes += 1
            add(c, counts, strata, div_ptr, div_ids, id_deg)
            chosen[k] = c
            ok = True
            if mode == MODE_DECIDE:
                ok = feasible(strata, target, maxnew, ndeg, goal - k - 1)
            if ok:
                ok = canonical(chosen, k + 1, perm_img, img)
            if not ok:
                remove(c, counts, strata, div_ptr, div_ids, id_deg)
                continue
            k += 1
            nxt[k] = c + 1
            if mode == MODE_DECIDE:
                if k == goal:
                    done = True
                    for d in range(1, ndeg):
                        if strata[d] != target[d]:
                            done = False
                            break
                    if done:
                        scal[K] = k
                        scal[NODES] = nodes
                        return FOUND, nrec
            else:
                for d in range(ndeg):
                    rec_strata[nrec, d] = strata[d]
                rec_strata[nrec, ndeg] = k
                for j in range(goal):
                    rec_sets[nrec, j] = chosen[j] if j < k else -1
                rec_nodes[nrec] = nodes
                nrec += 1

    return deco(run)


def get_kernel(jit: bool | None = None):
    """Search kernel for the requested backend; None follows ``PURE_O_NO_JIT``."""
    if jit is None:
        jit = jit_enabled()
    if jit and numba is None:
        raise RuntimeError("numba is not installed")
    return _cached_build(bool(jit))


@functools.lru_cache(maxsize=None)
def _cached_build(jit: bool):
    return _build(jit)


def canonical_check(chosen, perm_img, jit: bool = False) -> bool:
    """Standalone canonicity test for a strictly increasing rank array."""
    chosen = np.asarray(chosen, dtype=np.int64)
    img = np.empty(len(chosen), dtype=np.int64)
    if jit:
        return bool(_canonical_jit()(chosen, len(chosen), perm_img, img))
    return bool(_canonical_numpy(chosen, len(chosen), perm_img, img))


@functools.lru_cache(maxsize=None)
def _canonical_jit():
    return numba.njit(_canonical_loops)
