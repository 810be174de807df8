"""Time the compiled kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 64 256] [--repeat 3]

Both kernels must return identical results; the script checks this before
reporting the speedup.
"""

import argparse
import time

from tileadders.bench import make_input
from tileadders.constructions import build
from tileadders.engine import KERNELS, run_continuous, run_parallel


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kinds", nargs="*", default=["ripple", "carryskip", "carryselect", "combined"])
    ap.add_argument("--n", nargs="*", type=int, default=[64, 256])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "cython" not in KERNELS:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return
    print(f"{'kind':<12}{'n':>6}{'mode':>12}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for kind in args.kinds:
        for n in args.n:
            tac = build(kind, n)
            a, b = make_input(kind, n, "random", n)
            sys = tac.system(a + b)
            for mode in ("parallel", "continuous"):
                times = {}
                keys = {}
                for k in ("python", "cython"):
                    if mode == "parallel":
                        fn = lambda k=k: run_parallel(sys, kernel=k)
                    else:
                        fn = lambda k=k: run_continuous(sys, 7, kernel=k)
                    times[k], res = _best(fn, args.repeat)
                    keys[k] = (res.rho, res.sigma_sample, res.terminal_hash)
                assert keys["python"] == keys["cython"], (kind, n, mode)
                print(f"{kind:<12}{n:>6}{mode:>12}{times['python']:>12.4f}{times['cython']:>12.4f}"
                      f"{times['python'] / times['cython']:>9.1f}x")


if __name__ == "__main__":
    main()
