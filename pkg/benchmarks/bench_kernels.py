"""Compare the numba kernel with the numpy fallback on search workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends run the same decisions and enumerations; node counts must
match exactly, so the timing ratio is a like-for-like comparison.
"""
from __future__ import annotations

import argparse
import os
import time

from pure_o import _kernels
from pure_o.search import decide_pure_o_sequence, enumerate_pure_hvectors

DECIDE = [
    (1, 6, 6, 6, 7),
    (1, 5, 5, 5, 5, 6),
    (1, 6, 6, 8),
    (1, 6, 6, 6, 6),
    (1, 4, 7, 9),
]
ENUMERATE = [(4, 4, 4), (5, 4, 3)]


def workload():
    nodes = []
    for h in DECIDE:
        nodes.append(decide_pure_o_sequence(h, pq_filter=False).nodes)
    for s, n, g in ENUMERATE:
        nodes.append(len(enumerate_pure_hvectors(s, n, g)))
    return nodes


def timed(flag: str, repeat: int):
    os.environ["PURE_O_NO_JIT"] = flag
    result = workload()  # warm-up; includes compilation for the jit path
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        again = workload()
        best = min(best, time.perf_counter() - start)
        assert again == result
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")
    t_np, r_np = timed("1", args.repeat)
    t_jit, r_jit = timed("0", args.repeat)
    if r_np != r_jit:
        raise SystemExit(f"backends disagree: {r_np} vs {r_jit}")
    print(f"workload: {len(DECIDE)} decisions, {len(ENUMERATE)} enumerations")
    print(f"numpy  {t_np:8.3f} s")
    print(f"numba  {t_jit:8.3f} s")
    print(f"speedup {t_np / t_jit:6.1f}x")


if __name__ == "__main__":
    main()
