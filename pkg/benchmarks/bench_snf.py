"""Times integer invariant factors: compiled kernel against pure Python.

    python3 benchmarks/bench_snf.py [--sizes 4 8 16 32] [--reps 20] [--seed 1]
"""
import argparse
import random
import timeit

from ribbonsum import _snf_py
from ribbonsum._snf_backend import BACKEND, HAVE_KERNEL, int_invariant_factors


def random_flat(rng, n, spread=9):
    return [rng.randint(-spread, spread) for _ in range(n * n)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print("active backend: %s" % BACKEND)
    print("%6s %12s %12s %8s" % ("n", "python ms", "active ms", "speedup"))
    for n in args.sizes:
        mats = [random_flat(rng, n) for _ in range(args.reps)]
        for flat in mats:
            assert tuple(int_invariant_factors(n, n, flat)) == tuple(_snf_py.int_invariant_factors(n, n, flat))
        py = timeit.timeit(lambda: [_snf_py.int_invariant_factors(n, n, f) for f in mats], number=1)
        fast = timeit.timeit(lambda: [int_invariant_factors(n, n, f) for f in mats], number=1)
        print("%6d %12.2f %12.2f %8.1fx" % (n, 1000 * py / args.reps, 1000 * fast / args.reps, py / fast))
    if not HAVE_KERNEL:
        print("compiled kernel not built; both columns use the pure-Python path")


if __name__ == "__main__":
    main()
