"""Time the frontier kernels (numba, numpy, python) on hexagon dual graphs.

    python benchmarks/bench_kernels.py [--max-side 7] [--repeat 3]

Every backend must return MacMahon's count; the numba column excludes the
first, compiling call.
"""

from __future__ import annotations

import argparse
import time

from graphcond.formulas import macmahon
from graphcond.lattice import dual_graph, hexagon
from graphcond.matching import count_matchings_fast


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-side", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--python-limit", type=int, default=5, help="largest side run on the python backend")
    args = ap.parse_args()

    # warm up the jit on a small instance
    count_matchings_fast(dual_graph(hexagon(2, 2, 2)), backend="numba")

    print(f"{'side':>4} {'cells':>6} {'count':>24} {'numba s':>9} {'numpy s':>9} {'python s':>9} {'np/nb':>6}")
    for n in range(2, args.max_side + 1):
        g = dual_graph(hexagon(n, n, n))
        expected = macmahon(n, n, n)
        times = {}
        for backend in ("numba", "numpy", "python"):
            if backend == "python" and n > args.python_limit:
                times[backend] = float("nan")
                continue
            value = count_matchings_fast(g, backend=backend)
            assert value == expected, (backend, n, value, expected)
            times[backend] = best_time(lambda: count_matchings_fast(g, backend=backend), args.repeat)
        print(
            f"{n:>4} {g.n:>6} {expected:>24} {times['numba']:>9.4f} {times['numpy']:>9.4f}"
            f" {times['python']:>9.4f} {times['numpy'] / times['numba']:>6.1f}"
        )


if __name__ == "__main__":
    main()
