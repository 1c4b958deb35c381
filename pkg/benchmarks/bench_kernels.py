"""Benchmark the JIT-compiled kernels against the pure-numpy fallback.

Run with the package installed:

    python benchmarks/bench_kernels.py

The same comparison can be forced end-to-end by running anything in the
package with ADIA_NO_NUMBA=1.
"""

import time

import numpy as np

from adiasearch import _kernels
from adiasearch import get_profile, local_schedule, make_instance
from adiasearch.dynamics import _substep_grid
from adiasearch.model import initial_state


def _bench(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_propagation():
    inst = make_instance(10)
    profile = get_profile("quadratic")
    sched = local_schedule(inst, profile, 0.02)
    nsub = 32
    s_mid, dt_sub = _substep_grid(sched, nsub)
    a_mid = np.asarray(profile.coefficient(s_mid), dtype=float)
    states = np.empty((len(sched.s), 2), dtype=complex)
    states[0] = initial_state(inst).vector()
    n_steps = len(s_mid)

    variants = [("numpy fallback", _kernels.evolve_reduced_py)]
    if _kernels.HAVE_NUMBA:
        from numba import njit

        jitted = njit(cache=True)(_kernels.evolve_reduced_py)
        jitted(s_mid[:64], a_mid[:64], dt_sub[:64], nsub, inst.x, states[:3].copy())  # warm up
        variants.append(("numba @njit", jitted))

    print(f"reduced propagation, {n_steps} substeps:")
    results = {}
    for name, fn in variants:
        dt = _bench(fn, s_mid, a_mid, dt_sub, nsub, inst.x, states.copy())
        results[name] = dt
        print(f"  {name:16s} {dt * 1e3:9.2f} ms   ({n_steps / dt / 1e6:6.2f} Msteps/s)")
    if len(results) == 2:
        print(f"  speedup: {results['numpy fallback'] / results['numba @njit']:.1f}x")


def bench_jacobi():
    rng = np.random.default_rng(7)
    n = 256
    m = rng.standard_normal((n, n))
    m = 0.5 * (m + m.T)

    def run(fn):
        a = m.copy()
        v = np.eye(n)
        fn(a, v, 1e-12 * n, 64)

    variants = [("numpy fallback", _kernels.jacobi_eigh_py)]
    if _kernels.HAVE_NUMBA:
        from numba import njit

        jitted = njit(cache=True)(_kernels.jacobi_eigh_py)
        small = rng.standard_normal((4, 4))
        small = 0.5 * (small + small.T)
        jitted(small, np.eye(4), 1e-12, 64)  # warm up
        variants.append(("numba @njit", jitted))

    print(f"cyclic Jacobi eigensolver, {n}x{n}:")
    results = {}
    for name, fn in variants:
        dt = _bench(run, fn, repeat=3)
        results[name] = dt
        print(f"  {name:16s} {dt * 1e3:9.2f} ms")
    if len(results) == 2:
        print(f"  speedup: {results['numpy fallback'] / results['numba @njit']:.1f}x")


if __name__ == "__main__":
    print(f"numba available: {_kernels.HAVE_NUMBA}, disabled: {_kernels.NUMBA_DISABLED}")
    bench_propagation()
    bench_jacobi()
