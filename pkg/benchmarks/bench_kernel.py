"""Compiled vs pure-Python movement search.

Times ``search_moves`` over every lower-dimensional source set of a few
ambients, then times full cell enumeration in a fresh interpreter per
backend (the backend is fixed at import).

    python3 benchmarks/bench_kernel.py [--repeat 3]
"""

import argparse
import os
import subprocess
import sys
import time

from orientals import kernel
from orientals.parity import CUBE, SIMPLEX, ambient

CASES = [(SIMPLEX, 4), (SIMPLEX, 5), (CUBE, 3)]
ENUMERATE = "from orientals.parity import enumerate_cells as e; e({flavor!r}, {n})"


def sweep(search, amb, d, sources):
    odd, even = amb.odd[d], amb.even[d]
    for mu in sources:
        search(mu, odd, even)


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_table(repeat):
    print(f"{'ambient':<12}{'d':>3}{'sources':>9}{'cython s':>11}{'python s':>11}{'speedup':>9}")
    for flavor, n in CASES:
        amb = ambient(flavor, n)
        for d in range(1, n + 1):
            width = len(amb.gens[d - 1])
            if width > 14:  # keep the sweep to at most 16k sources
                continue
            sources = range(1 << width)
            fast = best_of(repeat, sweep, kernel.search_moves, amb, d, sources)
            slow = best_of(repeat, sweep, kernel.search_moves_py, amb, d, sources)
            print(f"{flavor}({n})".ljust(12) + f"{d:>3}{len(sources):>9}{fast:>11.4f}{slow:>11.4f}{slow / fast:>8.1f}x")


def enumeration_table(repeat):
    print(f"\n{'enumerate':<12}{'cython s':>11}{'python s':>11}{'speedup':>9}")
    for flavor, n in CASES:
        row = []
        for pure in ("", "1"):
            env = dict(os.environ, ORIENTALS_PURE_PYTHON=pure)
            if not pure:
                env.pop("ORIENTALS_PURE_PYTHON")
            code = "import timeit; print(min(timeit.repeat(%r, number=1, repeat=%d)))" % (
                ENUMERATE.format(flavor=flavor, n=n), repeat)
            out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
            row.append(float(out.stdout))
        print(f"{flavor}({n})".ljust(12) + f"{row[0]:>11.4f}{row[1]:>11.4f}{row[1] / row[0]:>8.1f}x")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    if kernel.BACKEND != "cython":
        sys.exit("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
    kernel_table(args.repeat)
    enumeration_table(args.repeat)


if __name__ == "__main__":
    main()
