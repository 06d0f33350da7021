#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the four per-mode kernels on a cubic grid's worth of flattened
modes, the finite-difference curl stencil, and a full spectral step
(FFT + rotation + inverse FFT) through each backend.

Usage: python benchmarks/bench_kernels.py [--n 48] [--repeats 20]
"""

import argparse
import time

import numpy as np

from rswave._kernels import numpy_backend

try:
    from rswave._kernels import cython_backend
except ImportError:
    cython_backend = None

from rswave import Grid3


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def make_inputs(n):
    grid = Grid3.cubic(n)
    rng = np.random.default_rng(0)
    npts = grid.npoints
    psi = np.ascontiguousarray(
        rng.standard_normal((3, npts)) + 1j * rng.standard_normal((3, npts))
    )
    theta = -0.02 * grid.kmag_flat
    real_field = np.ascontiguousarray(rng.standard_normal((3, n, n, n)))
    return grid, psi, np.cos(theta), np.sin(theta), real_field


def bench_backend(backend, grid, psi, cos_t, sin_t, real_field, repeats):
    khat = grid.khat_flat
    k = grid.k_flat
    dx = grid.spacings[0]
    out = {}
    out["rotate"] = timeit(lambda: backend.rotate_modes(psi, khat, cos_t, sin_t), repeats)
    out["project"] = timeit(lambda: backend.project_modes(psi, khat), repeats)
    out["curl"] = timeit(lambda: backend.curl_modes(psi, k), repeats)
    out["divergence"] = timeit(lambda: backend.divergence_modes(psi, k), repeats)
    out["fdtd_curl"] = timeit(lambda: backend.fdtd_curl(real_field, dx, dx, dx), repeats)

    shape = (3, *grid.shape)

    def full_step():
        hat = np.fft.fftn(psi.reshape(shape), axes=(1, 2, 3)).reshape(3, -1)
        hat = backend.rotate_modes(np.ascontiguousarray(hat), khat, cos_t, sin_t)
        np.fft.ifftn(hat.reshape(shape), axes=(1, 2, 3))

    out["full_step"] = timeit(full_step, repeats)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=48, help="grid points per axis")
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    grid, psi, cos_t, sin_t, real_field = make_inputs(args.n)
    print(f"grid {args.n}^3 = {grid.npoints} modes, best of {args.repeats}\n")

    results = {"numpy": bench_backend(numpy_backend, grid, psi, cos_t, sin_t,
                                      real_field, args.repeats)}
    if cython_backend is not None:
        results["cython"] = bench_backend(cython_backend, grid, psi, cos_t, sin_t,
                                          real_field, args.repeats)
    else:
        print("compiled backend not built; numpy only\n")

    kernels = list(results["numpy"])
    header = f"{'kernel':<12}" + "".join(f"{name:>12}" for name in results)
    if "cython" in results:
        header += f"{'speedup':>10}"
    print(header)
    for kernel in kernels:
        row = f"{kernel:<12}"
        for name in results:
            row += f"{results[name][kernel] * 1e3:>10.3f}ms"
        if "cython" in results:
            row += f"{results['numpy'][kernel] / results['cython'][kernel]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
