"""Instantaneous spectra: eigenvalues, gap, minimum gap and drive elements."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericDegeneracyError
from .model import (
    DrivingProfile,
    EffectiveHamiltonian,
    ReducedState,
    SearchInstance,
    _check_s,
    build_effective,
    get_profile,
    hamiltonian_entries,
    profile_derivative,
)

QUADRATIC = get_profile("quadratic")


@dataclass(frozen=True)
class SpectrumPoint:
    s: float
    E0: float
    E1: float
    gap: float
    v0: np.ndarray
    v1: np.ndarray


@dataclass(frozen=True)
class GapReport:
    s_star: float
    g_min: float
    method: str  # "closed_form" | "golden_section"


def eig2(h_mm, h_pp, h_mp):
    """Closed-form eigen-decomposition of symmetric 2x2 matrices; array-capable.

    Returns (E0, E1, v0, v1) with unit-norm eigenvectors oriented so the
    |m>-component is non-negative (ties broken on the |m_perp>-component).
    Vector arrays have shape (..., 2).
    """
    h_mm, h_pp, h_mp = np.broadcast_arrays(
        np.asarray(h_mm, float), np.asarray(h_pp, float), np.asarray(h_mp, float)
    )
    half_tr = 0.5 * (h_mm + h_pp)
    d = 0.5 * (h_mm - h_pp)
    r = np.hypot(d, h_mp)
    E0 = half_tr - r
    E1 = half_tr + r
    # branch keeps the large component analytic: (r+d, h_mp) when d >= 0
    up = d >= 0.0
    v1x = np.where(up, r + d, h_mp)
    v1y = np.where(up, h_mp, r - d)
    nrm = np.hypot(v1x, v1y)
    safe = nrm > 0.0
    nrm = np.where(safe, nrm, 1.0)
    v1x = np.where(safe, v1x / nrm, 1.0)
    v1y = np.where(safe, v1y / nrm, 0.0)
    v0x, v0y = -v1y, v1x
    v0x, v0y = _orient(v0x, v0y)
    v1x, v1y = _orient(v1x, v1y)
    return E0, E1, np.stack([v0x, v0y], axis=-1), np.stack([v1x, v1y], axis=-1)


def _orient(vx, vy):
    flip = (vx < 0.0) | ((vx == 0.0) & (vy < 0.0))
    sgn = np.where(flip, -1.0, 1.0)
    return vx * sgn, vy * sgn


def eigensystem(H: EffectiveHamiltonian) -> SpectrumPoint:
    """Exact eigen-decomposition of a reduced Hamiltonian."""
    E0, E1, v0, v1 = eig2(H.h_mm, H.h_pp, H.h_mp)
    return SpectrumPoint(
        s=H.s, E0=float(E0), E1=float(E1), gap=float(E1 - E0), v0=v0, v1=v1
    )


def gap_quadratic(x, s):
    """Closed-form gap for the quadratic drive; array-capable.

    g(s) = sqrt(1 - 4 s (1-s) (1 - x(x+1) - s(1-s))).  For x below 1e-12
    the x-terms are dropped, where g = |1 - 2 s (1-s)|.
    """
    s = np.asarray(s, dtype=float)
    u = s * (1.0 - s)
    if x < 1e-12:
        return np.abs(1.0 - 2.0 * u)
    return np.sqrt(1.0 - 4.0 * u * (1.0 - x * (x + 1.0) - u))


def gap_closed_form(instance: SearchInstance, s: float, profile: DrivingProfile = QUADRATIC) -> float:
    """Closed-form g(s); only valid for the quadratic drive."""
    if profile.kind != "quadratic":
        raise InvalidArgumentError(
            f"closed-form gap applies to the quadratic profile only, got {profile.kind!r}"
        )
    _check_s(s)
    return float(gap_quadratic(instance.x, s))


def gap_numeric(instance: SearchInstance, profile: DrivingProfile, s):
    """Gap from the 2x2 eigen-decomposition; array-capable in s."""
    _check_s(s)
    a = profile.coefficient(np.asarray(s, dtype=float))
    h_mm, h_pp, h_mp = hamiltonian_entries(instance.x, np.asarray(s, dtype=float), a)
    E0, E1, _, _ = eig2(h_mm, h_pp, h_mp)
    return E1 - E0


def min_gap(instance: SearchInstance, profile: DrivingProfile) -> GapReport:
    """Minimum gap over s in [0, 1].

    Quadratic drive: closed form.  With u = s(1-s) and c = 1 - x(x+1) the
    squared gap is 1 - 4u(c - u), minimized at u = min(c/2, 1/4) for c > 0.
    For N >= 8 that gives s* = 1/2 and g_min = 1/2 + 1/sqrt(N); at N <= 4
    the minimum moves off-center (N=4: s* = (1 - 1/sqrt(2))/2,
    g_min = sqrt(1 - c^2)), and at N = 2 it sits at the endpoints with
    g_min = 1.  Undriven interpolation: s* = 1/2 with g_min = x = 1/sqrt(N).
    Other profiles: golden-section minimization, s-tolerance 1e-12.
    """
    if profile.kind == "quadratic":
        x = instance.x
        c = 1.0 - x * (x + 1.0)
        if c >= 0.5:
            return GapReport(s_star=0.5, g_min=0.5 + x, method="closed_form")
        if c <= 0.0:
            return GapReport(s_star=0.0, g_min=1.0, method="closed_form")
        s_star = 0.5 * (1.0 - np.sqrt(1.0 - 2.0 * c))
        return GapReport(
            s_star=float(s_star), g_min=float(np.sqrt(1.0 - c * c)), method="closed_form"
        )
    if profile.kind == "none":
        # g^2 = (1-2s)^2 + 4 x^2 s(1-s): minimum at s = 1/2 with g = x
        return GapReport(s_star=0.5, g_min=instance.x, method="closed_form")
    s_star, g = _golden_min(lambda s: float(gap_numeric(instance, profile, s)), 0.0, 1.0, 1e-12)
    return GapReport(s_star=s_star, g_min=g, method="golden_section")


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f, lo, hi, xtol):
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > xtol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    s = 0.5 * (lo + hi)
    return s, f(s)


def eigenvector_closed_form(instance: SearchInstance, s: float, level: int) -> ReducedState:
    """The quoted closed-form eigenvectors for the quadratic drive.

    These are evaluated exactly as published and normalized; they are
    cross-checked against eigensystem() in the test suite, where they turn
    out to deviate from the true eigenvectors at finite N (a documented
    erratum; see README).  Use eigensystem() for trusted values.
    """
    _check_s(s)
    if level not in (0, 1):
        raise InvalidArgumentError(f"level must be 0 or 1, got {level}")
    x = instance.x
    xp = np.sqrt(1.0 - x * x)
    g = gap_quadratic(x, s)
    sign = -1.0 if level == 0 else 1.0
    c_psi0 = (s - 1.0) * (s + x) * (1.0 + xp)
    # expand |psi0> = x|m> + xp|m_perp> into the orthonormal basis
    cm = (1.0 + sign * g - 2.0 * s) + c_psi0 * x
    cp = c_psi0 * xp
    nrm = np.hypot(cm, cp)
    if nrm < 1e-13:
        raise NumericDegeneracyError(
            f"degenerate closed-form eigenvector at s={s}, level={level}; use eigensystem()"
        )
    cm, cp = cm / nrm, cp / nrm
    if cm < 0.0 or (cm == 0.0 and cp < 0.0):
        cm, cp = -cm, -cp
    return ReducedState(amp_m=cm, amp_perp=cp)


def dh_ds_entries(x, s, profile: DrivingProfile):
    """Entries of the analytic derivative dH/ds; array-capable.

    Differentiating the construction gives Hm - H0 - a'(s) * S with
    S = |psi0><m| + |m><psi0| (the published derivative carries the
    opposite sign on the drive term; see drive_matrix_element for that
    quantity)."""
    ap = profile_derivative(profile, np.asarray(s, dtype=float))
    xsq = x * x
    xp = np.sqrt(1.0 - xsq)
    d_mm = -(1.0 - xsq) - 2.0 * ap * x
    d_pp = (1.0 - xsq) * np.ones_like(np.asarray(s, dtype=float))
    d_mp = x * xp - ap * xp
    return d_mm, d_pp, d_mp


def dh_ds_matrix_element(instance: SearchInstance, profile: DrivingProfile, s) -> float:
    """|<E1; s| dH/ds |E0; s>| with the analytic s-derivative; array-capable."""
    _check_s(s)
    s = np.asarray(s, dtype=float)
    a = profile.coefficient(s)
    h_mm, h_pp, h_mp = hamiltonian_entries(instance.x, s, a)
    _, _, v0, v1 = eig2(h_mm, h_pp, h_mp)
    d_mm, d_pp, d_mp = dh_ds_entries(instance.x, s, profile)
    return _sandwich(v0, v1, d_mm, d_pp, d_mp)


def drive_matrix_element(instance: SearchInstance, s) -> float:
    """|<E1; s| Hm - H0 + (1-2s) S |E0; s>| for the quadratic drive.

    This is the adiabaticity numerator as published (drive term with a
    plus sign); it is bounded by 1 with its maximum at s = 1/2, unlike the
    analytic derivative which exceeds 1 near the endpoints. Array-capable.
    """
    _check_s(s)
    s = np.asarray(s, dtype=float)
    x = instance.x
    xp = np.sqrt(1.0 - x * x)
    h_mm, h_pp, h_mp = hamiltonian_entries(x, s, s * (1.0 - s))
    _, _, v0, v1 = eig2(h_mm, h_pp, h_mp)
    ap = 1.0 - 2.0 * s
    d_mm = -(1.0 - x * x) + 2.0 * ap * x
    d_pp = (1.0 - x * x) * np.ones_like(s)
    d_mp = x * xp + ap * xp
    return _sandwich(v0, v1, d_mm, d_pp, d_mp)


def _sandwich(v0, v1, d_mm, d_pp, d_mp):
    val = (
        v1[..., 0] * (d_mm * v0[..., 0] + d_mp * v0[..., 1])
        + v1[..., 1] * (d_mp * v0[..., 0] + d_pp * v0[..., 1])
    )
    out = np.abs(val)
    return float(out) if out.ndim == 0 else out


def spectrum_point(instance: SearchInstance, profile: DrivingProfile, s: float) -> SpectrumPoint:
    """Convenience: eigensystem of the constructed H(s)."""
    return eigensystem(build_effective(instance, profile, s))
