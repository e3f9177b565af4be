"""Timing of the hot kernels: numba-compiled versus the pure-numpy fallback.

Run directly for a side-by-side table; the script re-executes itself in a
subprocess with QBC_DISABLE_NUMBA=1 so the fallback numbers come from a
process where every kernel is genuinely uncompiled.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --no-compare   # current mode only
"""

import argparse
import json
import math
import os
import subprocess
import sys
import time

import numpy as np

from qbc._accel import NUMBA_ENABLED
from qbc._kernels import jacobi_eigh, project_pair, run_starts


def bench_jacobi(n: int) -> float:
    rng = np.random.default_rng(0)
    mats = []
    for _ in range(n):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        mats.append(np.ascontiguousarray((g + g.conj().T) / 2))
    jacobi_eigh(mats[0])  # compile
    t0 = time.perf_counter()
    for m in mats:
        jacobi_eigh(m)
    return time.perf_counter() - t0


def bench_projection(n: int) -> float:
    rng = np.random.default_rng(1)
    us = rng.standard_normal((n, 6))
    gammas = np.cos(rng.uniform(0, math.pi / 2, size=n))
    project_pair(us[0], gammas[0], 1e-14, 200)
    t0 = time.perf_counter()
    for k in range(n):
        project_pair(us[k], gammas[k], 1e-14, 200)
    return time.perf_counter() - t0


def bench_multistart(n_thetas: int, n_starts: int) -> float:
    run_starts(np.random.default_rng(2).standard_normal((1, 6)), 0.5, 0.1, 1e-10, 5000, 1e-14, 200)
    t0 = time.perf_counter()
    for k in range(n_thetas):
        theta = (math.pi / 2) * (k + 1) / n_thetas
        starts = np.random.default_rng(3 + k).standard_normal((n_starts, 6))
        run_starts(starts, math.cos(theta), 0.1, 1e-10, 5000, 1e-14, 200)
    return time.perf_counter() - t0


def run_benchmarks(args) -> dict:
    return {
        "mode": "numba" if NUMBA_ENABLED else "fallback",
        "jacobi": bench_jacobi(args.jacobi_n),
        "projection": bench_projection(args.projection_n),
        "multistart": bench_multistart(args.thetas, args.starts),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--jacobi-n", type=int, default=500)
    parser.add_argument("--projection-n", type=int, default=20000)
    parser.add_argument("--thetas", type=int, default=5)
    parser.add_argument("--starts", type=int, default=16)
    parser.add_argument("--no-compare", action="store_true", help="time the current mode only")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    args = parser.parse_args()

    if args.no_compare or args.json:
        res = run_benchmarks(args)
        if args.json:
            print(json.dumps(res))
        else:
            print(f"mode: {res['mode']}")
            for name in ("jacobi", "projection", "multistart"):
                print(f"  {name:<12} {res[name]:8.3f} s")
        return 0

    results = {}
    for label in ("numba", "fallback"):
        env = os.environ.copy()
        env.pop("QBC_DISABLE_NUMBA", None)
        if label == "fallback":
            env["QBC_DISABLE_NUMBA"] = "1"
        cmd = [
            sys.executable, os.path.abspath(__file__), "--json",
            "--jacobi-n", str(args.jacobi_n), "--projection-n", str(args.projection_n),
            "--thetas", str(args.thetas), "--starts", str(args.starts),
        ]
        out = subprocess.run(cmd, capture_output=True, text=True, env=env, check=True)
        results[label] = json.loads(out.stdout)

    print(f"{'kernel':<12} {'numba (s)':>12} {'fallback (s)':>14} {'speedup':>9}")
    for name in ("jacobi", "projection", "multistart"):
        fast, slow = results["numba"][name], results["fallback"][name]
        print(f"{name:<12} {fast:>12.3f} {slow:>14.3f} {slow / fast:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
