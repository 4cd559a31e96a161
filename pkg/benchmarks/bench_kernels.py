"""Benchmark the compiled bitmask kernels against the pure-Python fallback.

Runs minimal-cut enumeration and reachability on seeded random graphs with
both backends, checks the outputs agree, and prints a timing table.

    python3 benchmarks/bench_kernels.py [--sizes 8,10,12] [--repeat 3]
"""
from __future__ import annotations

import argparse
import random
import time

from garside_wb.kernels import _purepy

try:
    from garside_wb.kernels import _cutcore
except ImportError:  # pragma: no cover - source tree without a compiler
    _cutcore = None


def random_adj(n: int, rng: random.Random) -> list:
    """Connected random graph as an adjacency list of bitmasks."""
    adj = [0] * n
    order = list(range(n))
    rng.shuffle(order)
    for prev, v in zip(order, order[1:]):
        adj[prev] |= 1 << v
        adj[v] |= 1 << prev
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.3:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def workload(impl, graphs) -> list:
    out = []
    for adj, a, b in graphs:
        cuts = impl.minimal_cut_masks(adj, a, b)
        for c in cuts:
            out.append(impl.reach_bits(adj, a, c))
    return out


def bench(impl, graphs, repeat: int) -> tuple:
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = workload(impl, graphs)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="8,10,12",
                        help="Comma-separated vertex counts.")
    parser.add_argument("--graphs", type=int, default=20,
                        help="Graphs per size.")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _cutcore is None:
        raise SystemExit("compiled kernel unavailable; nothing to compare")

    print(f"{'|V|':>4} {'python':>10} {'cython':>10} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        rng = random.Random(args.seed)
        graphs = []
        for _ in range(args.graphs):
            adj = random_adj(n, rng)
            a = 1 << rng.randrange(n)
            b = 1 << rng.randrange(n)
            while b == a:
                b = 1 << rng.randrange(n)
            graphs.append((adj, a, b))
        t_py, r_py = bench(_purepy, graphs, args.repeat)
        t_cy, r_cy = bench(_cutcore, graphs, args.repeat)
        if r_py != r_cy:
            raise SystemExit(f"backend outputs disagree at |V|={n}")
        print(f"{n:>4} {t_py:>9.4f}s {t_cy:>9.4f}s {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
