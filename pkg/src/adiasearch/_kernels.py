"""Hot numeric kernels, JIT-compiled with numba when available.

Set ``ADIA_NO_NUMBA=1`` to force the pure-numpy fallback path (useful for
debugging and for the kernel benchmark in ``benchmarks/``).  Both paths run
the same source; numba only removes the interpreter overhead of the
sequential inner loops.
"""

import os

import numpy as np

NUMBA_DISABLED = os.environ.get("ADIA_NO_NUMBA", "").lower() in ("1", "true", "yes")

try:
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA and not NUMBA_DISABLED


def maybe_jit(fn):
    """JIT-compile ``fn`` unless the fallback path is selected."""
    if USING_NUMBA:
        return _njit(cache=True)(fn)
    return fn


def evolve_reduced_py(s_mid, a_mid, dt_sub, n_sub, x, states):
    """Sequential exact-exponential propagation in the 2D invariant basis.

    ``s_mid``/``a_mid``/``dt_sub`` are per-substep arrays of length
    ``(len(states) - 1) * n_sub``.  ``states[0]`` holds the initial
    amplitudes over {|m>, |m_perp>}; subsequent rows are filled with the
    state after each schedule sample.  Returns the worst norm drift seen.
    """
    xsq = x * x
    xp = np.sqrt(1.0 - xsq)
    cm = states[0, 0]
    cp = states[0, 1]
    drift = 0.0
    k = 0
    for i in range(states.shape[0] - 1):
        for _ in range(n_sub):
            s = s_mid[k]
            a = a_mid[k]
            dt = dt_sub[k]
            k += 1
            hmm = (1.0 - s) * (1.0 - xsq) - 2.0 * a * x
            hpp = (1.0 - s) * xsq + s
            hmp = -(1.0 - s) * x * xp - a * xp
            c = 0.5 * (hmm + hpp)
            d = 0.5 * (hmm - hpp)
            w = np.sqrt(d * d + hmp * hmp)
            if w > 0.0:
                snc = np.sin(w * dt) / w
            else:
                snc = dt
            cosw = np.cos(w * dt)
            phase = np.exp(-1j * c * dt)
            nm = phase * ((cosw - 1j * d * snc) * cm - 1j * hmp * snc * cp)
            np_ = phase * (-1j * hmp * snc * cm + (cosw + 1j * d * snc) * cp)
            cm = nm
            cp = np_
        states[i + 1, 0] = cm
        states[i + 1, 1] = cp
        err = abs(abs(cm) ** 2 + abs(cp) ** 2 - 1.0)
        if err > drift:
            drift = err
    return drift


evolve_reduced = maybe_jit(evolve_reduced_py)


def jacobi_eigh_py(a, v, tol, max_sweeps):
    """Threshold cyclic Jacobi diagonalization of a symmetric matrix.

    ``a`` is destroyed (converges to a diagonal matrix); ``v`` must start as
    the identity and accumulates the rotations.  Returns the number of
    sweeps used, or -1 if ``max_sweeps`` was not enough.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if np.sqrt(2.0 * off) <= tol:
            return sweep
        thresh = np.sqrt(off) / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh * 1e-4:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return -1


jacobi_eigh = maybe_jit(jacobi_eigh_py)
