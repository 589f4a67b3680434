"""Compare the numba and numpy search kernels on exact gamma_sp over all trees of a given order.

Usage: python benchmarks/bench_kernels.py [--orders 10 11 12] [--repeat 3]

Graphs are rebuilt from their canonical forms for every run so the per-graph
result cache never short-circuits the search. The numba kernels are warmed up
once before timing (JIT compile time is reported separately).
"""

import argparse
import time

from superdom.enumeration import tree_forms
from superdom.graph import tree_from_canonical
from superdom.kernels import set_backend
from superdom.solvers import gamma, gamma_sp, gamma_t


def run_once(forms):
    out = []
    for f in forms:
        t = tree_from_canonical(f)
        out.append((gamma(t), gamma_t(t), gamma_sp(t)))
    return out


def best_of(forms, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = run_once(forms)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=[10, 11, 12])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    set_backend("numba")
    start = time.perf_counter()
    run_once(tree_forms(8))
    print(f"numba warm-up (includes JIT/cache load): {time.perf_counter() - start:.2f}s")

    print(f"{'n':>3} {'trees':>6} {'numba_s':>9} {'numpy_s':>9} {'speedup':>8}  agree")
    for n in args.orders:
        forms = tree_forms(n)
        set_backend("numba")
        t_nb, r_nb = best_of(forms, args.repeat)
        set_backend("numpy")
        t_np, r_np = best_of(forms, args.repeat)
        print(f"{n:>3} {len(forms):>6} {t_nb:>9.3f} {t_np:>9.3f} {t_np / t_nb:>7.1f}x  {r_nb == r_np}")


if __name__ == "__main__":
    main()
