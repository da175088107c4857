"""numba vs numpy for the trigonometric-polynomial kernel and an odd solve.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from gaspt_rh import _accel, oracles
from gaspt_rh.rh_odd import OddSolver


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_case(n_pts, order, nq, seed=0):
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal((nq, 2 * order + 1)) + 1j * rng.standard_normal((nq, 2 * order + 1))
    theta = rng.uniform(0, 2 * np.pi, n_pts)
    k = 2.0 + np.exp(1j * rng.uniform(0, 2 * np.pi, n_pts))
    return lambda: _accel.trig_poly_eval(coeffs, -order, theta, k)


def odd_case():
    data = oracles.boundary_trace(oracles.named("4x4-16x2y2"), 2.0, 32)
    pts = [2.3 + 0.4j, 1.6 - 0.5j, 2.0 + 0.1j, 2.5 - 0.2j]

    def run():
        s = OddSolver(data, 1)
        for z in pts:
            s(z)
    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.numba_available():
        print("numba not installed; nothing to compare")
        return
    cases = [("trig_poly 24k pts, order 40", kernel_case(24_000, 40, 3)),
             ("trig_poly 200k pts, order 16", kernel_case(200_000, 16, 2)),
             ("odd solve m=1, 4 points", odd_case())]
    print(f"{'case':32s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, fn in cases:
        _accel.use_numba(True)
        fn()  # compile / warm cache
        t_nb = best_of(fn, args.repeat)
        _accel.use_numba(False)
        t_np = best_of(fn, args.repeat)
        _accel.use_numba(True)
        print(f"{name:32s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.2f}")


if __name__ == "__main__":
    main()
