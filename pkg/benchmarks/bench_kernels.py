"""Time each hot kernel under both backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

numba timings exclude the first (compiling) call.
"""

import argparse
import time

import numpy as np

from temporal_rac import kernels
from temporal_rac.temporal import random_unit_vectors, signs_array


def _seesaw_args(n, seed=0):
    rng = np.random.default_rng(seed)
    s = signs_array(n)
    return s, random_unit_vectors(rng, s.shape[0]), random_unit_vectors(rng, n), 1e-10, 10_000


def _bland_args(seed=0):
    rng = np.random.default_rng(seed)
    m, nvar = 40, 120
    A = np.abs(rng.normal(size=(m, nvar)))
    tab = np.zeros((m + 1, nvar + m + 1))
    tab[:m, :nvar] = A
    tab[:m, nvar:nvar + m] = np.eye(m)
    tab[:m, -1] = 1.0 + np.abs(rng.normal(size=m))
    tab[m, :nvar] = -rng.normal(size=nvar)
    basis = np.arange(nvar, nvar + m, dtype=np.int64)
    return tab, basis, np.ones(nvar + m, dtype=np.bool_), 1e-9, 100_000


CASES = {
    "seesaw": ("n=5, one restart", lambda: _seesaw_args(5)),
    "deterministic_k": ("n=12, all Bob codes", lambda: (signs_array(12),)),
    "rac_enumeration": ("n=4, all strategies", lambda: (4,)),
    "bland": ("40x120 random LP", lambda: _bland_args()),
}


def _time(func, make_args, repeat):
    func(*make_args())  # warm-up / compile
    best = float("inf")
    for _ in range(repeat):
        args = make_args()
        t0 = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    print(f"{'kernel':<16} {'case':<22} {'backend':<7} {'best (ms)':>10} {'speed-up':>9}")
    for name, (label, make_args) in CASES.items():
        impls = kernels.IMPLEMENTATIONS[name]
        times = {b: _time(f, make_args, args.repeat) for b, f in impls.items()}
        for backend, t in times.items():
            ratio = times["numpy"] / t
            print(f"{name:<16} {label:<22} {backend:<7} {1e3 * t:>10.3f} {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
