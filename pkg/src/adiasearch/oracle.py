"""Independent brute-force references used to mint and audit golden values.

Nothing here shares formulas with the modules it certifies: the dense
eigensolver is a cyclic Jacobi iteration, quadrature is adaptive Simpson
bisection with Richardson acceptance, and the reference propagator is a
fixed-step loop built on numpy's eigh rather than the closed-form 2x2
exponential.  Simplicity and auditability beat speed throughout.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from ._kernels import jacobi_eigh
from .dynamics import EvolutionResult, ReducedState, TrajectoryPoint, _check_pair
from .errors import InvalidArgumentError, ResourceLimitError
from .model import DrivingProfile, FullHamiltonian, SearchInstance, hamiltonian_entries, initial_state
from .schedule import Schedule


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    oracle_value: float
    library_value: float
    abs_delta: float
    rel_delta: float
    tolerance: float
    passed: bool
    params: dict = field(default_factory=dict)


def make_report(quantity, oracle_value, library_value, tolerance, params=None, relative=False):
    """Compare an oracle value against a library value at a tolerance."""
    abs_delta = abs(oracle_value - library_value)
    scale = max(abs(oracle_value), abs(library_value), 1e-300)
    rel_delta = abs_delta / scale
    passed = (rel_delta if relative else abs_delta) <= tolerance
    return OracleReport(
        quantity=quantity,
        oracle_value=float(oracle_value),
        library_value=float(library_value),
        abs_delta=float(abs_delta),
        rel_delta=float(rel_delta),
        tolerance=float(tolerance),
        passed=bool(passed),
        params=dict(params or {}),
    )


def full_eigensystem(H: FullHamiltonian):
    """All eigenpairs of a dense full-space Hamiltonian by cyclic Jacobi.

    Returns (eigenvalues, eigenvectors) sorted ascending, vectors in columns.
    """
    if H.n > 12:
        raise ResourceLimitError(f"dense oracle limited to n <= 12, got n={H.n}")
    a = np.array(H.matrix, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(float(np.abs(a).max()), 1.0)
    sweeps = jacobi_eigh(a, v, 1e-14 * n * scale, 64)
    if sweeps < 0:  # pragma: no cover
        raise ArithmeticError("Jacobi iteration did not converge in 64 sweeps")
    w = np.diag(a).copy()
    order = np.argsort(w)
    return w[order], v[:, order]


def dense_two_lowest(H: FullHamiltonian):
    """Two lowest eigenpairs of the dense H(s): (E0, E1, vectors)."""
    w, v = full_eigensystem(H)
    return float(w[0]), float(w[1]), v[:, :2]


def reference_propagate(
    instance: SearchInstance,
    profile: DrivingProfile,
    schedule: Schedule,
    dt: float,
) -> EvolutionResult:
    """Fixed-step reduced-space propagation with eigh-based exponentials."""
    T = schedule.T
    if dt > T / 1e5:
        raise InvalidArgumentError(f"reference propagator requires dt <= T/1e5 = {T / 1e5:.3e}")
    _check_pair(instance, schedule)
    n_steps = int(np.ceil(T / dt))
    dt = T / n_steps
    t_mid = (np.arange(n_steps) + 0.5) * dt
    s_mid = np.asarray(schedule.s_of_t(t_mid), dtype=float)
    a_mid = np.asarray(profile.coefficient(s_mid), dtype=float)
    hmm, hpp, hmp = hamiltonian_entries(instance.x, s_mid, a_mid)

    psi = initial_state(instance).vector()
    drift = 0.0
    H = np.empty((2, 2))
    for k in range(n_steps):
        H[0, 0] = hmm[k]
        H[1, 1] = hpp[k]
        H[0, 1] = H[1, 0] = hmp[k]
        w, V = np.linalg.eigh(H)
        psi = V @ (np.exp(-1j * w * dt) * (V.T @ psi))
        drift = max(drift, abs(float(np.vdot(psi, psi).real) - 1.0))

    final = ReducedState(amp_m=psi[0], amp_perp=psi[1])
    hmm_f, hpp_f, hmp_f = hamiltonian_entries(
        instance.x, 1.0, float(profile.coefficient(1.0))
    )
    wf, Vf = np.linalg.eigh(np.array([[hmm_f, hmp_f], [hmp_f, hpp_f]]))
    gf = abs(np.vdot(Vf[:, 0], psi)) ** 2
    point = TrajectoryPoint(
        t=T, s=1.0, state=final,
        ground_fidelity=float(gf), marked_fidelity=float(abs(psi[0]) ** 2),
    )
    return EvolutionResult(
        final_state=final,
        final_marked_fidelity=point.marked_fidelity,
        final_ground_fidelity=point.ground_fidelity,
        epsilon=schedule.epsilon,
        schedule=schedule,
        trajectory=[point],
        norm_drift=drift,
    )


def high_res_quadrature(f, a: float, b: float, tol: float = 1e-13) -> float:
    """Adaptive bisection Simpson quadrature with Richardson acceptance."""
    if tol < 1e-14:
        raise InvalidArgumentError("tolerance below 1e-14 is not resolvable in doubles")

    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    max_panels = 10**6
    panels = 0
    total = 0.0
    mid0 = 0.5 * (a + b)
    stack = [(a, b, f(a), f(mid0), f(b), simpson(a, b, f(a), f(mid0), f(b)), tol)]
    while stack:
        lo, hi, flo, fmid, fhi, whole, tol_i = stack.pop()
        panels += 1
        if panels > max_panels:
            raise ArithmeticError("quadrature did not converge within 1e6 panels")
        mid = 0.5 * (lo + hi)
        flm = f(0.5 * (lo + mid))
        frm = f(0.5 * (mid + hi))
        left = simpson(lo, mid, flo, flm, fmid)
        right = simpson(mid, hi, fmid, frm, fhi)
        if abs(left + right - whole) <= 15.0 * tol_i:
            total += left + right + (left + right - whole) / 15.0
        else:
            stack.append((lo, mid, flo, flm, fmid, left, tol_i / 2.0))
            stack.append((mid, hi, fmid, frm, fhi, right, tol_i / 2.0))
    return total


def characteristic_gap_2x2(h_mm: float, h_pp: float, h_mp: float, n_grid: int = 4_000_001) -> float:
    """Gap of a symmetric 2x2 matrix from a brute-force scan of the
    characteristic polynomial's sign changes (deliberately naive)."""
    lo = min(h_mm, h_pp) - abs(h_mp) - 1.0
    hi = max(h_mm, h_pp) + abs(h_mp) + 1.0
    lam = np.linspace(lo, hi, n_grid)
    p = (h_mm - lam) * (h_pp - lam) - h_mp * h_mp
    sign_change = np.nonzero(np.diff(np.sign(p)) != 0)[0]
    # a root exactly on a grid point yields two adjacent indices; merge them
    merged = []
    for i in sign_change:
        if not merged or i > merged[-1] + 1:
            merged.append(int(i))
    roots = []
    for i in merged[:2]:
        # one bisection refinement pass per root
        a_, b_ = lam[i], lam[i + 1]
        for _ in range(200):
            m = 0.5 * (a_ + b_)
            pm = (h_mm - m) * (h_pp - m) - h_mp * h_mp
            pa = (h_mm - a_) * (h_pp - a_) - h_mp * h_mp
            if pa * pm <= 0.0:
                b_ = m
            else:
                a_ = m
        roots.append(0.5 * (a_ + b_))
    if len(roots) != 2:
        raise ArithmeticError("characteristic polynomial scan found fewer than 2 roots")
    return abs(roots[1] - roots[0])


def project_full_to_reduced(H: FullHamiltonian, instance: SearchInstance) -> np.ndarray:
    """Numerically project a dense H(s) onto span{|m>, |m_perp>}."""
    from .model import full_basis

    e_m, _, m_perp = full_basis(instance, H.marked_index)
    B = np.column_stack([e_m, m_perp])
    return B.T @ H.matrix @ B


def collect(reports: List[OracleReport]) -> dict:
    """Summarize a batch of oracle reports."""
    return {
        "total": len(reports),
        "passed": sum(r.passed for r in reports),
        "failed": [r.quantity for r in reports if not r.passed],
    }
