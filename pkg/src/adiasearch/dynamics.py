"""Time-dependent propagation along a schedule and fidelity measures.

Propagation uses the exact unitary exponential of the (piecewise-frozen)
Hamiltonian on each substep, with s sampled at the substep midpoint, so the
norm is preserved by construction and there are no stiffness constraints.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ._kernels import evolve_reduced
from .errors import InvalidArgumentError, ResourceLimitError
from .model import (
    DrivingProfile,
    ReducedState,
    SearchInstance,
    full_basis,
    full_operators,
    initial_state,
)
from .schedule import Schedule
from .spectrum import eig2
from .model import hamiltonian_entries

MAX_FULL_PROPAGATION_QUBITS = 10


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    s: float
    state: ReducedState
    ground_fidelity: float
    marked_fidelity: float


@dataclass(frozen=True)
class EvolutionResult:
    final_state: ReducedState
    final_marked_fidelity: float
    final_ground_fidelity: float
    epsilon: float
    schedule: Schedule = field(repr=False)
    trajectory: List[TrajectoryPoint] = field(repr=False)
    norm_drift: float = 0.0
    max_leakage: float = 0.0


def fidelity(a: ReducedState, b: ReducedState) -> float:
    """|<a|b>|^2 for unit-norm reduced states."""
    for st in (a, b):
        if abs(st.norm_sq() - 1.0) > 1e-6:
            raise InvalidArgumentError(f"state not normalized: |psi|^2 = {st.norm_sq()}")
    ov = np.conj(a.amp_m) * b.amp_m + np.conj(a.amp_perp) * b.amp_perp
    return float(abs(ov) ** 2)


def _substep_grid(schedule: Schedule, substeps_per_sample: int):
    """Per-substep midpoint times, s values and step widths."""
    t = np.asarray(schedule.t, dtype=float)
    nsub = substeps_per_sample
    dt_iv = np.diff(t)
    dt_sub = np.repeat(dt_iv / nsub, nsub)
    offs = (np.arange(nsub) + 0.5) / nsub
    t_mid = (t[:-1, None] + dt_iv[:, None] * offs[None, :]).ravel()
    s_mid = np.asarray(schedule.s_of_t(t_mid), dtype=float)
    return s_mid, dt_sub


def _check_pair(instance: SearchInstance, schedule: Schedule) -> None:
    if schedule.instance.n != instance.n:
        raise InvalidArgumentError(
            f"schedule was built for n={schedule.instance.n}, not n={instance.n}"
        )


def _trajectory(schedule, states, x, profile):
    """Build TrajectoryPoint records from sampled amplitudes."""
    s_arr = np.asarray(schedule.s, dtype=float)
    a_arr = profile.coefficient(s_arr)
    h_mm, h_pp, h_mp = hamiltonian_entries(x, s_arr, a_arr)
    _, _, v0, _ = eig2(h_mm, h_pp, h_mp)
    gf = np.abs(v0[:, 0] * states[:, 0] + v0[:, 1] * states[:, 1]) ** 2
    mf = np.abs(states[:, 0]) ** 2
    return [
        TrajectoryPoint(
            t=float(schedule.t[i]),
            s=float(s_arr[i]),
            state=ReducedState(amp_m=states[i, 0], amp_perp=states[i, 1]),
            ground_fidelity=float(gf[i]),
            marked_fidelity=float(mf[i]),
        )
        for i in range(len(s_arr))
    ]


def propagate(
    instance: SearchInstance,
    profile: DrivingProfile,
    schedule: Schedule,
    substeps_per_sample: int = 16,
) -> EvolutionResult:
    """Propagate |psi0> along the schedule in the exact 2D reduced space."""
    if substeps_per_sample < 1:
        raise InvalidArgumentError("substeps_per_sample must be >= 1")
    _check_pair(instance, schedule)
    s_mid, dt_sub = _substep_grid(schedule, substeps_per_sample)
    a_mid = np.asarray(profile.coefficient(s_mid), dtype=float)
    states = np.empty((len(schedule.s), 2), dtype=complex)
    psi0 = initial_state(instance)
    states[0] = psi0.vector()
    drift = evolve_reduced(s_mid, a_mid, dt_sub, substeps_per_sample, instance.x, states)
    traj = _trajectory(schedule, states, instance.x, profile)
    last = traj[-1]
    return EvolutionResult(
        final_state=last.state,
        final_marked_fidelity=last.marked_fidelity,
        final_ground_fidelity=last.ground_fidelity,
        epsilon=schedule.epsilon,
        schedule=schedule,
        trajectory=traj,
        norm_drift=float(drift),
    )


def propagate_full(
    instance: SearchInstance,
    profile: DrivingProfile,
    schedule: Schedule,
    marked_index: Optional[int] = None,
    substeps_per_sample: int = 16,
) -> EvolutionResult:
    """Propagate in the dense 2^n-dimensional space (validation path, n <= 10).

    Writes H(s) = I + K(s) with K built from the dense projector matrices
    and applies the exact exponential of each frozen substep through the
    (at most 3-dimensional) Krylov space of the state under K, which K
    maps into itself.  Reports the largest component of the state outside
    span{|m>, |m_perp>} seen at any sample as ``max_leakage``.
    """
    if instance.n > MAX_FULL_PROPAGATION_QUBITS:
        raise ResourceLimitError(
            f"full-space propagation limited to n <= {MAX_FULL_PROPAGATION_QUBITS}, got n={instance.n}"
        )
    if substeps_per_sample < 1:
        raise InvalidArgumentError("substeps_per_sample must be >= 1")
    _check_pair(instance, schedule)
    P0, Pm, S = full_operators(instance, marked_index)
    e_m, psi0_vec, m_perp = full_basis(instance, marked_index)
    B = np.column_stack([e_m, m_perp])

    s_mid, dt_sub = _substep_grid(schedule, substeps_per_sample)
    a_mid = np.asarray(profile.coefficient(s_mid), dtype=float)

    psi = psi0_vec.astype(complex)
    n_samples = len(schedule.s)
    nsub = substeps_per_sample
    states = np.empty((n_samples, 2), dtype=complex)
    states[0] = B.T @ psi
    drift = 0.0
    leakage = float(np.linalg.norm(psi - B @ (B.T @ psi)))

    k = 0
    for i in range(n_samples - 1):
        for _ in range(nsub):
            s = s_mid[k]
            a = a_mid[k]
            dt = dt_sub[k]
            k += 1
            c0, c1, c2 = -(1.0 - s), -s, -a

            def K_apply(v):
                return c0 * (P0 @ v) + c1 * (Pm @ v) + c2 * (S @ v)

            psi = np.exp(-1j * dt) * _expm_krylov(K_apply, psi, dt)
        states[i + 1] = B.T @ psi
        nrm = float(np.vdot(psi, psi).real)
        drift = max(drift, abs(nrm - 1.0))
        leakage = max(leakage, float(np.linalg.norm(psi - B @ states[i + 1])))

    traj = _trajectory(schedule, states, instance.x, profile)
    last = traj[-1]
    return EvolutionResult(
        final_state=last.state,
        final_marked_fidelity=last.marked_fidelity,
        final_ground_fidelity=last.ground_fidelity,
        epsilon=schedule.epsilon,
        schedule=schedule,
        trajectory=traj,
        norm_drift=drift,
        max_leakage=leakage,
    )


def _expm_krylov(K_apply, psi, dt):
    """exp(-i*K*dt) @ psi, exact because span{psi, K psi, K^2 psi} is K-invariant."""
    k1 = K_apply(psi)
    k2 = K_apply(k1)
    cols = []
    for v in (psi, k1, k2):
        w = v.astype(complex)
        for q in cols:  # modified Gram-Schmidt, twice for stability
            w = w - q * np.vdot(q, w)
        for q in cols:
            w = w - q * np.vdot(q, w)
        nw = np.linalg.norm(w)
        if nw > 1e-12 * max(1.0, float(np.linalg.norm(v))):
            cols.append(w / nw)
    Q = np.column_stack(cols)
    KQ = np.column_stack([K_apply(Q[:, j]) for j in range(Q.shape[1])])
    T = Q.conj().T @ KQ
    T = 0.5 * (T + T.conj().T)
    w, U = np.linalg.eigh(T)
    coeffs = U @ (np.exp(-1j * w * dt) * (U.conj().T @ (Q.conj().T @ psi)))
    return Q @ coeffs
