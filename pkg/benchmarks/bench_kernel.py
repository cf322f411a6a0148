#!/usr/bin/env python3
"""Compare the compiled and pure validation cores.

Two workloads: raw insertion validation on width-capped random instances,
and full golden-vs-greedy games through the referee.

Usage: python benchmarks/bench_kernel.py [--points N] [--instances K] [--max-w W]
"""

from __future__ import annotations

import argparse
import random
import time

from semichain import GameConfig, run_game
from semichain.backend import core_class
from semichain.order import SemiOrder
from semichain.spoiler import RandomUpGrowingSpoiler


def bench_inserts(backend: str, instances: int, points: int, width: int) -> float:
    moves = []
    for seed in range(instances):
        gen = RandomUpGrowingSpoiler(w=width, seed=seed, n_target=points)
        seq = []
        while (move := gen.next(None)) is not None:
            seq.append(sum(1 << i for i in move.down))
        moves.append(seq)
    cls = core_class(backend)
    started = time.perf_counter()
    for seq in moves:
        core = cls()
        for down in seq:
            core.try_insert(down, 0)
        core.width()
    return time.perf_counter() - started


def bench_games(backend: str, max_w: int) -> float:
    import semichain.backend as b
    import semichain.order as o

    saved = o.SemiOrderCore
    o.SemiOrderCore = b.core_class(backend)
    try:
        started = time.perf_counter()
        for w in range(1, max_w + 1):
            run_game(GameConfig("up_growing", w, "golden", "alg"))
            run_game(GameConfig("up_growing", w, "golden", "first-fit"))
        return time.perf_counter() - started
    finally:
        o.SemiOrderCore = saved


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--instances", type=int, default=50)
    parser.add_argument("--width", type=int, default=10)
    parser.add_argument("--max-w", type=int, default=25)
    args = parser.parse_args()

    backends = ["pure"]
    try:
        core_class("compiled")
        backends.append("compiled")
    except ImportError:
        print("compiled core not built; benchmarking the pure core only")

    print(f"\ninsert validation: {args.instances} instances x {args.points} points, width cap {args.width}")
    timings = {}
    for backend in backends:
        timings[backend] = bench_inserts(backend, args.instances, args.points, args.width)
        rate = args.instances * args.points / timings[backend]
        print(f"  {backend:>9}: {timings[backend]:7.3f}s  ({rate:,.0f} inserts/s)")
    if len(timings) == 2:
        print(f"  speedup: {timings['pure'] / timings['compiled']:.1f}x")

    print(f"\nfull games: golden vs alg and vs first-fit, w=1..{args.max_w}")
    timings = {}
    for backend in backends:
        timings[backend] = bench_games(backend, args.max_w)
        print(f"  {backend:>9}: {timings[backend]:7.3f}s")
    if len(timings) == 2:
        print(f"  speedup: {timings['pure'] / timings['compiled']:.1f}x")


if __name__ == "__main__":
    main()
