#!/usr/bin/env python3
"""Benchmark the numba and numpy kernel backends against each other.

Times the two hot paths of the Monte-Carlo estimator (counter-based channel
draws and batched per-scheme rate evaluation) plus a full ESC estimate, and
prints the speedup of the numba path. Run after `pip install -e .`:

    python benchmarks/bench_kernels.py --trials 200000 --repeat 5
"""

import argparse
import time

import numpy as np

from comp_noma import (SchemeId, SystemParams, build_layout, db_to_linear,
                       derive_link_statistics, estimate_esc, set_backend)
from comp_noma import kernels


def best_of(repeat, fn, *args, **kwargs):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args, **kwargs)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    layout = build_layout(1.0, (0.5,) * 3, (0.95,) * 3)
    stats = derive_link_statistics(layout, 4.0, 0.001)
    params = SystemParams(alpha=0.1, rho=db_to_linear(20.0), upsilon=0.01)
    band = np.asarray(params.band_fractions)
    eps_sums = stats.sigma_eps.sum(axis=0)

    backends = [("numpy", kernels.gains_chunk_numpy, kernels.rates_chunk_numpy)]
    if kernels._HAVE_NUMBA:
        backends.insert(0, ("numba", kernels.gains_chunk_numba,
                            kernels.rates_chunk_numba))
        # trigger jit compilation outside the timed region
        warm = kernels.gains_chunk_numba(0, 0, 1000, stats.sigma_hat)
        kernels.rates_chunk_numba(warm, SchemeId.COMP_VPNOMA.code, params.alpha,
                                  params.beta, params.rho, params.upsilon,
                                  band, eps_sums)
    else:
        print("numba not importable; timing the numpy path only")

    n = args.trials
    print(f"\n{n} trials, best of {args.repeat} runs, times in ms")
    print(f"{'kernel':<26}" + "".join(f"{name:>12}" for name, _, _ in backends)
          + ("     speedup" if len(backends) == 2 else ""))

    results = {}
    for name, gains_fn, _ in backends:
        results[name] = 1e3 * best_of(args.repeat, gains_fn, 1, 0, n,
                                      stats.sigma_hat)
    line = f"{'channel draws':<26}" + "".join(
        f"{results[name]:12.1f}" for name, _, _ in backends)
    if len(backends) == 2:
        line += f"{results['numpy'] / results['numba']:11.1f}x"
    print(line)

    gains = {name: fn(1, 0, n, stats.sigma_hat) for name, fn, _ in backends}
    for scheme in SchemeId:
        results = {}
        for name, _, rates_fn in backends:
            results[name] = 1e3 * best_of(
                args.repeat, rates_fn, gains[name], scheme.code, params.alpha,
                params.beta, params.rho, params.upsilon, band, eps_sums)
        line = f"{'rates ' + scheme.token:<26}" + "".join(
            f"{results[name]:12.1f}" for name, _, _ in backends)
        if len(backends) == 2:
            line += f"{results['numpy'] / results['numba']:11.1f}x"
        print(line)

    results = {}
    for name, _, _ in backends:
        set_backend(name)
        results[name] = 1e3 * best_of(
            args.repeat, estimate_esc, layout, stats, params,
            SchemeId.COMP_VPNOMA, n, 1)
    line = f"{'full ESC estimate':<26}" + "".join(
        f"{results[name]:12.1f}" for name, _, _ in backends)
    if len(backends) == 2:
        line += f"{results['numpy'] / results['numba']:11.1f}x"
    print(line)

    if len(backends) == 2:
        set_backend("numba")
        fast = estimate_esc(layout, stats, params, SchemeId.COMP_VPNOMA, n, 1)
        set_backend("numpy")
        slow = estimate_esc(layout, stats, params, SchemeId.COMP_VPNOMA, n, 1)
        gap = abs(fast.mean_total - slow.mean_total) / slow.mean_total
        print(f"\nbackend agreement on the estimate: {gap:.2e} relative")


if __name__ == "__main__":
    main()
