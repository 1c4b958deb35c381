import math

import numpy as np
import pytest

import adiasearch as a
from adiasearch.errors import InvalidArgumentError
from adiasearch.oracle import (
    characteristic_gap_2x2,
    collect,
    dense_two_lowest,
    full_eigensystem,
    high_res_quadrature,
    make_report,
    reference_propagate,
)


def test_make_report_absolute_and_relative():
    r = make_report("q", 1.0, 1.0 + 5e-10, 1e-9)
    assert r.passed and r.abs_delta == pytest.approx(5e-10)
    r2 = make_report("q", 100.0, 100.1, 1e-9)
    assert not r2.passed
    r3 = make_report("q", 100.0, 100.00000001, 1e-9, relative=True)
    assert r3.passed
    assert collect([r, r2, r3]) == {"total": 3, "passed": 2, "failed": ["q"]}


def test_high_res_quadrature_known_integrals():
    assert high_res_quadrature(math.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-12)
    assert high_res_quadrature(lambda t: t * t, 0.0, 1.0) == pytest.approx(1 / 3, abs=1e-13)
    assert high_res_quadrature(lambda t: math.exp(-t), 0.0, 10.0) == pytest.approx(
        1 - math.exp(-10), abs=1e-12
    )
    with pytest.raises(InvalidArgumentError):
        high_res_quadrature(math.sin, 0.0, 1.0, tol=1e-16)


def test_high_res_quadrature_vs_library_runtime(inst64, quadratic):
    from adiasearch.spectrum import gap_quadratic

    x = inst64.x
    T = high_res_quadrature(lambda s: 1.0 / float(gap_quadratic(x, s)) ** 2, 0.0, 1.0)
    assert T == pytest.approx(a.runtime_quadrature(inst64, quadratic).T, abs=1e-10)


def test_characteristic_gap_matches_eig2():
    from adiasearch.spectrum import eig2

    rng = np.random.default_rng(11)
    for _ in range(5):
        hmm, hpp, hmp = rng.uniform(-1, 1, 3)
        E0, E1, _, _ = eig2(hmm, hpp, hmp)
        assert characteristic_gap_2x2(hmm, hpp, hmp) == pytest.approx(E1 - E0, abs=1e-9)
    # a root landing exactly on a grid point must not be double counted
    assert characteristic_gap_2x2(0.5, 0.5, -0.25) == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("n", [3, 6])
def test_jacobi_eigensystem_matches_numpy(n, quadratic):
    H = a.build_full(a.make_instance(n), quadratic, 0.4)
    w, v = full_eigensystem(H)
    w_np = np.linalg.eigvalsh(H.matrix)
    assert np.abs(w - w_np).max() < 1e-12
    # residuals and orthonormality
    assert np.abs(H.matrix @ v - v * w).max() < 1e-12
    assert np.abs(v.T @ v - np.eye(len(w))).max() < 1e-12


def test_jacobi_fallback_matches_jitted():
    from adiasearch._kernels import jacobi_eigh, jacobi_eigh_py

    rng = np.random.default_rng(7)
    M = rng.standard_normal((20, 20))
    M = M + M.T
    outs = []
    for fn in (jacobi_eigh, jacobi_eigh_py):
        A = M.copy()
        V = np.eye(20)
        sweeps = fn(A, V, 1e-14 * 20 * np.abs(M).max(), 64)
        assert sweeps >= 0
        outs.append(np.sort(np.diag(A)))
    assert np.abs(outs[0] - outs[1]).max() < 1e-12
    assert np.abs(outs[0] - np.linalg.eigvalsh(M)).max() < 1e-11


def test_dense_two_lowest_vs_reduction(inst64, quadratic):
    e0, e1, _ = dense_two_lowest(a.build_full(inst64, quadratic, 0.5))
    sp = a.spectrum_point(inst64, quadratic, 0.5)
    assert e0 == pytest.approx(sp.E0, abs=1e-10)
    assert e1 == pytest.approx(sp.E1, abs=1e-10)


def test_reference_propagate_agrees_with_library(inst64, quadratic):
    sched = a.local_schedule(inst64, quadratic, 0.2)
    ref = reference_propagate(inst64, quadratic, sched, dt=sched.T / 2e5)
    lib = a.propagate(inst64, quadratic, sched)
    assert ref.final_marked_fidelity == pytest.approx(lib.final_marked_fidelity, abs=1e-7)
    assert ref.norm_drift < 1e-12


def test_reference_propagate_rejects_coarse_dt(inst64, quadratic):
    sched = a.local_schedule(inst64, quadratic, 0.2)
    with pytest.raises(InvalidArgumentError):
        reference_propagate(inst64, quadratic, sched, dt=sched.T / 100)
