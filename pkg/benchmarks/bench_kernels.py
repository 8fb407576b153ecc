"""Compare the compiled permutation kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--sizes 100,1000,10000] [--repeat 200]

Both backends are checked for equal results before timing.
"""
import argparse
import random
import timeit

from conjprod import _pykernels

try:
    from conjprod import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNELS = ("compose", "inverse", "conjugate", "cycles", "cycle_lengths", "parity")


def _args(name, p, q):
    if name in ("compose", "conjugate"):
        return (p, q)
    return (p,)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100,1000,10000")
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
    rng = random.Random(args.seed)
    print("%-14s %7s %12s %12s %8s" % ("kernel", "n", "python us", "cython us", "speedup"))
    for n in (int(s) for s in args.sizes.split(",")):
        p = list(range(n))
        q = list(range(n))
        rng.shuffle(p)
        rng.shuffle(q)
        p, q = tuple(p), tuple(q)
        for name in KERNELS:
            a = _args(name, p, q)
            py = getattr(_pykernels, name)
            t_py = min(timeit.repeat(lambda: py(*a), number=args.repeat, repeat=3)) / args.repeat
            if _ckernels is None:
                print("%-14s %7d %12.1f %12s %8s" % (name, n, t_py * 1e6, "-", "-"))
                continue
            cy = getattr(_ckernels, name)
            if _norm(py(*a)) != _norm(cy(*a)):
                raise SystemExit("backends disagree on %s at n=%d" % (name, n))
            t_cy = min(timeit.repeat(lambda: cy(*a), number=args.repeat, repeat=3)) / args.repeat
            print("%-14s %7d %12.1f %12.1f %7.1fx" % (name, n, t_py * 1e6, t_cy * 1e6, t_py / t_cy))


def _norm(x):
    if isinstance(x, list):
        return sorted(tuple(c) if isinstance(c, (list, tuple)) else c for c in x)
    return x


if __name__ == "__main__":
    main()
