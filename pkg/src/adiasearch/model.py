"""Search instances, driving profiles and Hamiltonian construction.

The search Hamiltonian interpolates between the uniform-superposition
projector Hamiltonian H0 = I - |psi0><psi0| and the marked-state
Hamiltonian Hm = I - |m><m|, with an optional driving term

    H_D = a(s) (|psi0><m| + |m><psi0|)

that deforms the path without changing the endpoints (for coefficients
with a(0) = a(1) = 0).  Everything is expressed in the orthonormal reduced
basis {|m>, |m_perp>} where |psi0> = x|m> + sqrt(1-x^2)|m_perp> and
x = 1/sqrt(N); this 2D subspace is exactly invariant under H(s), so the
reduced matrices are exact at any N.  Energies are in units of the overall
scale (set to 1), times in the inverse of that (hbar = 1).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError

MAX_QUBITS = 63
MAX_DENSE_QUBITS = 12


@dataclass(frozen=True)
class SearchInstance:
    """A database-search problem: N = 2**n items, overlap x = 1/sqrt(N)."""

    n: int
    N: int
    x: float
    marked_index: int = 0


def make_instance(n: int, marked_index: int = 0) -> SearchInstance:
    """Build a SearchInstance for an n-qubit database."""
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise InvalidArgumentError(f"qubit count must be in [1, {MAX_QUBITS}], got {n!r}")
    N = 1 << int(n)
    if not 0 <= marked_index < N:
        raise InvalidArgumentError(f"marked_index must be in [0, {N}), got {marked_index}")
    return SearchInstance(n=int(n), N=N, x=1.0 / np.sqrt(N), marked_index=int(marked_index))


# --- driving profiles -------------------------------------------------------

def _coeff_none(s):
    return np.zeros_like(np.asarray(s, dtype=float)) + 0.0


def _coeff_quadratic(s):
    return s * (1.0 - s)


def _coeff_sqrt_product(s):
    return np.sqrt(np.maximum(s * (1.0 - s), 0.0))


def _coeff_alt(s):
    # alternative path with a larger minimum gap; note a(1) = sqrt(2) != 0
    return np.sqrt(s * (s + 1.0))


def _deriv_none(s):
    return np.zeros_like(np.asarray(s, dtype=float)) + 0.0


def _deriv_quadratic(s):
    return 1.0 - 2.0 * s


def _deriv_sqrt_product(s):
    return (1.0 - 2.0 * s) / (2.0 * np.sqrt(s * (1.0 - s)))


def _deriv_alt(s):
    return (2.0 * s + 1.0) / (2.0 * np.sqrt(s * (s + 1.0)))


@dataclass(frozen=True)
class DrivingProfile:
    """Path-deformation coefficient a(s) (= b(s)) selecting the H(s) family."""

    kind: str
    coefficient: Callable = field(compare=False)
    derivative: Optional[Callable] = field(default=None, compare=False)


PROFILES = {
    "none": DrivingProfile("none", _coeff_none, _deriv_none),
    "quadratic": DrivingProfile("quadratic", _coeff_quadratic, _deriv_quadratic),
    "sqrt_product": DrivingProfile("sqrt_product", _coeff_sqrt_product, _deriv_sqrt_product),
    "alt": DrivingProfile("alt", _coeff_alt, _deriv_alt),
}

PROFILE_KINDS = tuple(PROFILES)


def get_profile(kind: str) -> DrivingProfile:
    try:
        return PROFILES[kind]
    except KeyError:
        raise InvalidArgumentError(
            f"unknown profile {kind!r}; choose from {PROFILE_KINDS} or use custom_profile()"
        ) from None


def custom_profile(coefficient: Callable, derivative: Optional[Callable] = None) -> DrivingProfile:
    """Wrap a user-supplied coefficient s -> a(s) as a profile.

    If no derivative is given, a central finite difference is used where
    one is needed.
    """
    return DrivingProfile("custom", coefficient, derivative)


def profile_coefficient(profile: DrivingProfile, s: float) -> float:
    """Evaluate a(s), validating the reduced-time domain."""
    _check_s(s)
    return float(profile.coefficient(s))


def profile_derivative(profile: DrivingProfile, s):
    """da/ds, analytic for the built-ins, central difference for custom."""
    if profile.derivative is not None:
        return profile.derivative(s)
    d = 1e-7
    lo = np.maximum(np.asarray(s) - d, 0.0)
    hi = np.minimum(np.asarray(s) + d, 1.0)
    return (profile.coefficient(hi) - profile.coefficient(lo)) / (hi - lo)


def endpoints_valid(profile: DrivingProfile, tol: float = 1e-12) -> bool:
    """True when a(0) = a(1) = 0, i.e. H(0) = H0 and H(1) = Hm."""
    return abs(float(profile.coefficient(0.0))) <= tol and abs(float(profile.coefficient(1.0))) <= tol


def _check_s(s) -> None:
    s = np.asarray(s, dtype=float)
    if np.any(s < 0.0) or np.any(s > 1.0):
        raise InvalidArgumentError(f"reduced time s must lie in [0, 1], got {s}")


# --- reduced (2D) construction ---------------------------------------------

@dataclass(frozen=True)
class ReducedState:
    """Complex amplitudes over the orthonormal basis {|m>, |m_perp>}."""

    amp_m: complex
    amp_perp: complex

    def vector(self) -> np.ndarray:
        return np.array([self.amp_m, self.amp_perp], dtype=complex)

    def norm_sq(self) -> float:
        return abs(self.amp_m) ** 2 + abs(self.amp_perp) ** 2


def initial_state(instance: SearchInstance) -> ReducedState:
    """|psi0> in the reduced basis: (x, sqrt(1-x^2))."""
    x = instance.x
    return ReducedState(amp_m=x, amp_perp=np.sqrt(1.0 - x * x))


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """H(s) projected on {|m>, |m_perp>}; real symmetric 2x2."""

    s: float
    h_mm: float
    h_pp: float
    h_mp: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.h_mm, self.h_mp], [self.h_mp, self.h_pp]])


def hamiltonian_entries(x, s, a):
    """Entries (h_mm, h_pp, h_mp) of the reduced H(s); array-capable.

    h_mm = (1-s)(1-x^2) - 2 a x
    h_pp = (1-s) x^2 + s
    h_mp = -(1-s) x sqrt(1-x^2) - a sqrt(1-x^2)
    """
    xsq = x * x
    xp = np.sqrt(1.0 - xsq)
    h_mm = (1.0 - s) * (1.0 - xsq) - 2.0 * a * x
    h_pp = (1.0 - s) * xsq + s
    h_mp = -(1.0 - s) * x * xp - a * xp
    return h_mm, h_pp, h_mp


def build_effective(instance: SearchInstance, profile: DrivingProfile, s: float) -> EffectiveHamiltonian:
    """Construct the reduced H(s) = (1-s)H0 + sHm - H_D."""
    _check_s(s)
    a = float(profile.coefficient(s))
    h_mm, h_pp, h_mp = hamiltonian_entries(instance.x, float(s), a)
    return EffectiveHamiltonian(s=float(s), h_mm=float(h_mm), h_pp=float(h_pp), h_mp=float(h_mp))


# --- dense full-space construction (small n oracle) -------------------------

@dataclass(frozen=True)
class FullHamiltonian:
    """Dense N x N realization of H(s) for small n."""

    s: float
    matrix: np.ndarray = field(compare=False)
    profile_kind: str = "quadratic"
    marked_index: int = 0
    n: int = 0


def full_basis(instance: SearchInstance, marked_index: Optional[int] = None):
    """Full-space vectors (e_m, psi0, m_perp) for the dense construction."""
    if marked_index is None:
        marked_index = instance.marked_index
    N = instance.N
    if not 0 <= marked_index < N:
        raise InvalidArgumentError(f"marked_index must be in [0, {N}), got {marked_index}")
    e_m = np.zeros(N)
    e_m[marked_index] = 1.0
    psi0 = np.full(N, 1.0 / np.sqrt(N))
    m_perp = (psi0 - instance.x * e_m) / np.sqrt(1.0 - instance.x**2)
    return e_m, psi0, m_perp


def full_operators(instance: SearchInstance, marked_index: Optional[int] = None):
    """Dense projector pieces (P0, Pm, S) with H(s) = I - (1-s)P0 - sPm - a(s)S."""
    if instance.n > MAX_DENSE_QUBITS:
        raise ResourceLimitError(
            f"dense construction limited to n <= {MAX_DENSE_QUBITS}, got n={instance.n}"
        )
    e_m, psi0, _ = full_basis(instance, marked_index)
    P0 = np.outer(psi0, psi0)
    Pm = np.outer(e_m, e_m)
    S = np.outer(psi0, e_m) + np.outer(e_m, psi0)
    return P0, Pm, S


def build_full(
    instance: SearchInstance,
    profile: DrivingProfile,
    s: float,
    marked_index: Optional[int] = None,
) -> FullHamiltonian:
    """Dense N x N H(s) assembled from outer products; n <= 12 guard."""
    _check_s(s)
    if marked_index is None:
        marked_index = instance.marked_index
    P0, Pm, S = full_operators(instance, marked_index)
    a = float(profile.coefficient(s))
    N = instance.N
    H = np.eye(N) - (1.0 - s) * P0 - s * Pm - a * S
    return FullHamiltonian(
        s=float(s), matrix=H, profile_kind=profile.kind, marked_index=marked_index, n=instance.n
    )
