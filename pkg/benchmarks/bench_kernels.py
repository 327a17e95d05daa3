"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 20000] [--repeat 3]

Both backends run on identical inputs in this process and their outputs
are compared before any timing is reported.
"""
import argparse
import random
import sys
import timeit

import numpy as np

from kirbycalc import _pure, kernels

try:
    from kirbycalc import _speedups
except ImportError:
    _speedups = None


def smith_loop(impl, mats, r, c):
    for m in mats:
        impl.smith_diagonal(m, r, c)


def kernel_loop(impl, mats, r, c):
    for m in mats:
        impl.kernel_basis(m, r, c)


def pure_batch(arr):
    return [_pure.smith_diagonal(m.ravel().tolist(), *arr.shape[1:]) for m in arr]


def box_case(impl, forms_, bounds):
    for q in forms_:
        impl.norm_counts(q, bounds, -12, 12, True)


def random_forms(rng, count, n, bound):
    out = []
    while len(out) < count:
        q = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                q[i][j] = q[j][i] = rng.randint(-bound, bound)
        out.append(q)
    return out


def best(stmt, repeat):
    return min(timeit.repeat(stmt, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000, help="matrices per case")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _speedups is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    rows = []

    for r, c in [(2, 2), (3, 3), (4, 4)]:
        arr = rng.integers(-9, 10, size=(args.n, r, c)).astype(np.int64)
        flat = [m.ravel().tolist() for m in arr]
        for a in flat[:500]:
            assert list(_speedups.smith_diagonal(a, r, c)) == list(_pure.smith_diagonal(a, r, c))
            assert ([list(x) for x in _speedups.kernel_basis(a, r, c)]
                    == [list(x) for x in _pure.kernel_basis(a, r, c)])
        batch = kernels.smith_diagonal_batch(arr)
        assert batch[:500].tolist() == [list(d) for d in pure_batch(arr[:500])]

        rows.append((f"smith {r}x{c} loop", best(lambda: smith_loop(_pure, flat, r, c), args.repeat),
                     best(lambda: smith_loop(_speedups, flat, r, c), args.repeat)))
        rows.append((f"kernel {r}x{c} loop", best(lambda: kernel_loop(_pure, flat, r, c), args.repeat),
                     best(lambda: kernel_loop(_speedups, flat, r, c), args.repeat)))
        rows.append((f"smith {r}x{c} batch", best(lambda: pure_batch(arr), args.repeat),
                     best(lambda: kernels.smith_diagonal_batch(arr), args.repeat)))

    prng = random.Random(args.seed)
    for n, bounds in [(2, [8, 8]), (3, [4, 4, 4])]:
        qs = random_forms(prng, 50, n, 6)
        for q in qs[:5]:
            assert _speedups.norm_counts(q, bounds, -12, 12, True) == _pure.norm_counts(q, bounds, -12, 12, True)
        rows.append((f"norm counts rank {n}", best(lambda: box_case(_pure, qs, bounds), args.repeat),
                     best(lambda: box_case(_speedups, qs, bounds), args.repeat)))

    print(f"{'case':24s} {'python (s)':>11s} {'compiled (s)':>13s} {'speedup':>8s}")
    for name, slow, fast in rows:
        print(f"{name:24s} {slow:11.4f} {fast:13.4f} {slow / fast:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
