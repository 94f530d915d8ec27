#!/usr/bin/env python3
"""Benchmark the kernel backends against each other.

Times the hot primitives (Hermitian eigensolve, fidelity trace, partial
transpose spectrum, the separable-search objective) and one full
closest-separable-state solve per available backend.

Run:  python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import numpy as np  # noqa: E402

from qdephase.kernels import available_backends, load_backend  # noqa: E402


def _bench(fn, repeats):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best * 1e6  # microseconds


def kernel_rows(mod, repeats):
    rng = np.random.default_rng(0)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    rho /= rho.trace().real
    herm = (g + g.conj().T) / 2
    sqrt_rho, _ = mod.psd_sqrt_with_min(rho)
    g2 = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    sigma = g2 @ g2.conj().T
    sigma /= sigma.trace().real
    x = rng.standard_normal(16)
    return [
        ("eigh_herm 4x4", _bench(lambda: mod.eigh_herm(herm), repeats)),
        ("eigvalsh_herm 4x4", _bench(lambda: mod.eigvalsh_herm(herm), repeats)),
        ("psd_sqrt 4x4", _bench(lambda: mod.psd_sqrt_with_min(rho), repeats)),
        ("sqrt_fidelity", _bench(lambda: mod.sqrt_fidelity(sqrt_rho, sigma), repeats)),
        ("pt_min_eig", _bench(lambda: mod.pt_min_eig(sigma), repeats)),
        ("css_objective", _bench(lambda: mod.css_objective(x, sqrt_rho, 1e3), repeats)),
    ]


def css_solve_seconds(backend):
    os.environ["QDEPHASE_KERNELS"] = {"python": "py", "cython": "c"}[backend]
    for name in list(sys.modules):
        if name.startswith("qdephase"):
            del sys.modules[name]
    from qdephase.refsearch import closest_separable_bures  # noqa: PLC0415
    from qdephase.states import FamilyParams, initial_pure  # noqa: PLC0415

    bell = initial_pure(FamilyParams(0.5))
    t0 = time.perf_counter()
    res = closest_separable_bures(bell)
    return time.perf_counter() - t0, res.e_value


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=2000)
    args = ap.parse_args()

    backends = available_backends()
    results = {b: kernel_rows(load_backend(b), args.repeats) for b in backends}

    width = max(len(n) for n, _ in results[backends[0]])
    header = f"{'kernel':<{width}}" + "".join(f"  {b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for i, (name, _) in enumerate(results[backends[0]]):
        row = f"{name:<{width}}"
        times = [results[b][i][1] for b in backends]
        for t in times:
            row += f"  {t:>10.2f}us"
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>7.2f}x"
        print(row)

    print()
    for b in backends:
        secs, e = css_solve_seconds(b)
        print(f"full CSS solve (Bell state), {b:>7}: {secs:6.2f}s  e={e:.8f}")


if __name__ == "__main__":
    main()
