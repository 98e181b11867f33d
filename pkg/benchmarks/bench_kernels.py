"""Compare the compiled and pure-Python iteration kernels.

    python benchmarks/bench_kernels.py [--points 2001] [--repeat 3]
"""
import argparse
import time

import numpy as np

from conflictdyn import _pykernels
from conflictdyn.model import derive_coefficients
from conflictdyn.scenarios import SALAMIS

try:
    from conflictdyn import _ckernels
except ImportError:
    _ckernels = None


def tn_sweep(k, points):
    for tn in np.linspace(-1.0, 1.0, points):
        c = derive_coefficients(SALAMIS.with_(TN_x=float(tn)))
        args = (c.a_x, c.c_x, c.a_y, c.c_y, 0.5, 0.5)
        _, _, diverged = k.attractor(*args, 500, 200, 1e6)
        if diverged < 0:
            k.lyapunov(*args, 5000, 500, 1e6)


def long_orbit(k, steps):
    c = derive_coefficients(SALAMIS)
    k.orbit(c.a_x, c.c_x, c.a_y, c.c_y, 0.5, 0.5, steps, False, 1e12)


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2001)
    ap.add_argument("--steps", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled kernels not built; timing the fallback only")

    cases = {
        f"TN_x sweep, {args.points} points + Lyapunov": lambda k: tn_sweep(k, args.points),
        f"orbit, {args.steps} steps": lambda k: long_orbit(k, args.steps),
    }
    for label, case in cases.items():
        times = {name: timed(lambda: case(k), args.repeat) for name, k in backends}
        line = "  ".join(f"{name}={t:.3f}s" for name, t in times.items())
        if len(times) == 2:
            line += f"  speedup={times['python'] / times['cython']:.1f}x"
        print(f"{label:<40} {line}")


if __name__ == "__main__":
    main()
