"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload is run through both backends; outputs are compared before any
timing is reported.
"""
import argparse
import random
import sys
import time

from hirzebruch import _kernels
from hirzebruch.cohomology import section_basis


def workloads(rng):
    # the vector search behind the 480-class example, and a wider one
    yield "signed_vectors(7,5,7,4)", "signed_vectors", (7, 5, 7, 4)
    yield "signed_vectors(9,6,12,4)", "signed_vectors", (9, 6, 12, 4)
    # interpolation matrices like the scanner builds
    for a, b, e, r, m in [(3, 9, 3, 6, 2), (4, 24, 5, 8, 3), (4, 12, 2, 5, 3)]:
        basis = section_basis(a, b, e)
        us = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(r)]
        vs = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(r)]
        ks = [k for k, _ in basis.elements]
        js = [j for _, j in basis.elements]
        yield (f"interpolation L({a},{b};{m}^{r}) F_{e}", "interpolation_rank_mod_p",
               (us, vs, [m] * r, ks, js, _kernels.PRIME))
    rows = [[rng.randint(-10 ** 9, 10 ** 9) for _ in range(120)] for _ in range(100)]
    yield "rank_mod_p 100x120", "rank_mod_p", (rows, 120, _kernels.PRIME)


def best_of(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    if _kernels.compiled_impl is None:
        print("compiled kernels are not built; nothing to compare (pip install -e . builds them)")
        return 1
    rng = random.Random(args.seed)
    print(f"{'workload':40s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for name, fn, fargs in workloads(rng):
        tp, op = best_of(getattr(_kernels.python_impl, fn), fargs, args.repeat)
        tc, oc = best_of(getattr(_kernels.compiled_impl, fn), fargs, args.repeat)
        if op != oc:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:40s} {tp:10.4f} {tc:11.4f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
