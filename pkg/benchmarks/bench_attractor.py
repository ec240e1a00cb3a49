#!/usr/bin/env python3
"""Benchmark the compiled attractor kernels against the pure-Python
fallback.

Runs the same workload twice in subprocesses: once with numba enabled and
once with PARITYLIFT_DISABLE_NUMBA=1.  The workload solves a batch of
random games with the symmetric engine and times the attractor fixpoint on
a larger standalone graph.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
import time

import numpy as np

from paritylift import _kernels
from paritylift.attractors import attractor
from paritylift.game import EVEN, random_game
from paritylift.harness import spaces_for
from paritylift.symmetric import solve_symmetric

n_big, n_games, n_solve, seed = {n_big}, {n_games}, {n_solve}, {seed}

# warm-up (includes numba compilation when it is enabled)
g0 = random_game(16, 3, 4, seed=seed)
attractor(g0, EVEN, np.ones(g0.n, np.uint8))

t0 = time.perf_counter()
for i in range(n_games):
    g = random_game(n_big, 4, 4, seed=seed + i)
    target = np.zeros(g.n, np.uint8)
    target[:: max(g.n // 20, 1)] = 1
    attractor(g, EVEN, target)
attractor_time = time.perf_counter() - t0

t0 = time.perf_counter()
for i in range(n_solve):
    g = random_game(24, 3, 4, seed=1000 + seed + i)
    solve_symmetric(g, *spaces_for(g, kind="succinct"))
solve_time = time.perf_counter() - t0

print(json.dumps({{
    "using_numba": _kernels.USING_NUMBA,
    "attractor_seconds": attractor_time,
    "solve_seconds": solve_time,
}}))
"""


def run(disable_numba, args):
    env = dict(os.environ)
    env["PARITYLIFT_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    code = WORKLOAD.format(n_big=args.n_big, n_games=args.n_games,
                           n_solve=args.n_solve, seed=args.seed)
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-big", type=int, default=20_000,
                        help="vertex count for the standalone attractor runs")
    parser.add_argument("--n-games", type=int, default=10)
    parser.add_argument("--n-solve", type=int, default=20,
                        help="random games for the end-to-end solve timing")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    compiled = run(False, args)
    fallback = run(True, args)
    if not compiled["using_numba"]:
        print("note: numba unavailable, both runs used the fallback")

    print(f"{'':<22}{'compiled':>12}{'fallback':>12}{'speedup':>10}")
    for key, label in (("attractor_seconds", "attractor fixpoint"),
                       ("solve_seconds", "symmetric solve")):
        c, f = compiled[key], fallback[key]
        ratio = f / c if c > 0 else float("inf")
        print(f"{label:<22}{c:>11.3f}s{f:>11.3f}s{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
