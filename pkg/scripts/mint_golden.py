"""Mint golden.json: every derived expected value, produced by an oracle.

Each record pairs an independently computed oracle value with the library
value it certifies, plus the tolerance and parameters.  Regenerate with

    python scripts/mint_golden.py

and inspect the diff before committing; the test suite replays the file.
"""

import dataclasses
import json
import math
import os
import sys

import numpy as np

import adiasearch as a
from adiasearch.model import hamiltonian_entries
from adiasearch.oracle import (
    characteristic_gap_2x2,
    dense_two_lowest,
    high_res_quadrature,
    make_report,
    project_full_to_reduced,
)
from adiasearch.spectrum import gap_quadratic

QUAD = a.get_profile("quadratic")
NONE = a.get_profile("none")
SQRT = a.get_profile("sqrt_product")


def mint():
    reports = []

    # Reduced H at s=0.5 for large n approaches [[.5,-.25],[-.25,.5]]:
    # certify the library entries against the projected dense matrix.
    inst12 = a.make_instance(12)
    H = a.build_full(inst12, QUAD, 0.5)
    proj = project_full_to_reduced(H, inst12)
    eff = a.build_effective(inst12, QUAD, 0.5).matrix()
    reports.append(make_report(
        "effective_vs_projected_dense_max_entry_delta",
        oracle_value=float(np.abs(proj - eff).max()), library_value=0.0,
        tolerance=1e-12, params={"n": 12, "s": 0.5, "profile": "quadratic"},
    ))

    # 2x2 eigensystem vs characteristic-polynomial root scan.
    g_scan = characteristic_gap_2x2(0.5, 0.5, -0.25)
    sp = a.eigensystem(a.EffectiveHamiltonian(s=0.5, h_mm=0.5, h_pp=0.5, h_mp=-0.25))
    reports.append(make_report(
        "gap_of_[[0.5,-0.25],[-0.25,0.5]]",
        oracle_value=g_scan, library_value=sp.gap, tolerance=1e-9,
        params={"h_mm": 0.5, "h_pp": 0.5, "h_mp": -0.25},
    ))

    # Closed-form gap at N=4, s=0.25 vs the numerical eigensystem gap.
    inst2 = a.make_instance(2)
    reports.append(make_report(
        "gap_closed_form_N4_s0.25",
        oracle_value=float(a.gap_numeric(inst2, QUAD, 0.25)),
        library_value=a.gap_closed_form(inst2, 0.25),
        tolerance=1e-12, params={"N": 4, "s": 0.25, "analytic": "sqrt(61)/8"},
    ))

    # Minimum gap of the plain interpolation, N=64 (analytic 1/sqrt(N)).
    inst6 = a.make_instance(6)
    rep = a.min_gap(inst6, NONE)
    reports.append(make_report(
        "min_gap_plain_N64",
        oracle_value=0.125, library_value=rep.g_min, tolerance=1e-9,
        params={"N": 64, "profile": "none", "s_star": rep.s_star},
    ))

    # Driven runtime at x -> 0 by bisection quadrature; analytic 1 + pi/2.
    T_inf = high_res_quadrature(lambda s: 1.0 / (1.0 - 2.0 * s * (1.0 - s)) ** 2, 0.0, 1.0, 1e-13)
    reports.append(make_report(
        "asymptotic_runtime_quadratic",
        oracle_value=T_inf, library_value=a.asymptotic_runtime(QUAD).value,
        tolerance=1e-11, params={"analytic": "1+pi/2", "x": 0.0},
    ))
    reports.append(make_report(
        "asymptotic_runtime_quadratic_vs_1_plus_pi_over_2",
        oracle_value=1.0 + math.pi / 2.0, library_value=T_inf, tolerance=1e-12,
        params={"note": "the frequently quoted constant 1+pi/4 is off by pi/4"},
    ))

    # Plain-interpolation runtime N=64: bisection quadrature vs library.
    x6 = inst6.x
    T_rc_oracle = high_res_quadrature(
        lambda s: 1.0 / (1.0 - 4.0 * (1.0 - x6 * x6) * s * (1.0 - s)), 0.0, 1.0, 1e-13
    )
    reports.append(make_report(
        "rc_runtime_N64",
        oracle_value=T_rc_oracle,
        library_value=a.runtime_quadrature(inst6, NONE).T,
        tolerance=1e-11, params={"N": 64, "analytic": "N*atan(sqrt(N-1))/sqrt(N-1)"},
    ))
    reports.append(make_report(
        "rc_runtime_N64_closed_form",
        oracle_value=64.0 * math.atan(math.sqrt(63.0)) / math.sqrt(63.0),
        library_value=T_rc_oracle, tolerance=1e-11, params={"N": 64},
    ))

    # Driven runtime N=64 by bisection quadrature vs ODE schedule.
    T_drv_oracle = high_res_quadrature(
        lambda s: 1.0 / float(gap_quadratic(x6, s)) ** 2, 0.0, 1.0, 1e-13
    )
    sched = a.local_schedule(inst6, QUAD, 1.0)
    reports.append(make_report(
        "driven_runtime_N64_ode_vs_quadrature",
        oracle_value=T_drv_oracle, library_value=sched.T, tolerance=1e-8,
        params={"N": 64, "epsilon": 1.0},
    ))
    reports.append(make_report(
        "driven_runtime_N64_closed_form_time",
        oracle_value=T_drv_oracle, library_value=a.closed_form_time(inst6, 1.0),
        tolerance=1e-11, params={"N": 64},
    ))

    # dH/ds matrix element vs a central finite difference of the entries.
    def fd_element(inst, profile, s, d=1e-6):
        def entries(sv):
            av = float(profile.coefficient(sv))
            return np.array(hamiltonian_entries(inst.x, sv, av))

        dmm, dpp, dmp = (entries(s + d) - entries(s - d)) / (2.0 * d)
        spt = a.spectrum_point(inst, profile, s)
        M = np.array([[dmm, dmp], [dmp, dpp]])
        return abs(spt.v1 @ M @ spt.v0)

    inst10 = a.make_instance(10)
    s_chk = 0.37
    reports.append(make_report(
        "dh_ds_element_N1024_s0.37",
        oracle_value=fd_element(inst10, QUAD, s_chk),
        library_value=a.dh_ds_matrix_element(inst10, QUAD, s_chk),
        tolerance=1e-6, params={"N": 1024, "s": s_chk, "profile": "quadratic"},
    ))

    # Dense two lowest eigenpairs vs the 2x2 reduction, n=6, s=0.5.
    e0, e1, _ = dense_two_lowest(a.build_full(inst6, QUAD, 0.5))
    spt = a.spectrum_point(inst6, QUAD, 0.5)
    reports.append(make_report(
        "dense_E0_n6_s0.5", oracle_value=e0, library_value=spt.E0,
        tolerance=1e-10, params={"n": 6, "s": 0.5},
    ))
    reports.append(make_report(
        "dense_E1_n6_s0.5", oracle_value=e1, library_value=spt.E1,
        tolerance=1e-10, params={"n": 6, "s": 0.5},
    ))

    # Final fidelity, reference fixed-step propagator vs library propagator.
    from adiasearch.oracle import reference_propagate

    sched10 = a.local_schedule(inst10, QUAD, 0.05)
    lib = a.propagate(inst10, QUAD, sched10)
    ref = reference_propagate(inst10, QUAD, sched10, dt=sched10.T / 2e5)
    reports.append(make_report(
        "final_fidelity_N1024_eps0.05",
        oracle_value=ref.final_marked_fidelity, library_value=lib.final_marked_fidelity,
        tolerance=1e-7, params={"N": 1024, "epsilon": 0.05, "dt": sched10.T / 2e5},
    ))

    # Closed-form eigenvector deviation: recorded as an erratum measurement,
    # not asserted small (the published expressions disagree at finite N).
    dev = 0.0
    for s in np.linspace(0.02, 0.98, 49):
        cf = a.eigenvector_closed_form(inst6, float(s), 0)
        spt = a.spectrum_point(inst6, QUAD, float(s))
        dev = max(dev, abs(cf.amp_m - spt.v0[0]), abs(cf.amp_perp - spt.v0[1]))
    reports.append(make_report(
        "closed_form_eigenvector_erratum_N64",
        oracle_value=0.0, library_value=dev, tolerance=1.0,
        params={"N": 64, "note": "max component deviation of the published closed form "
                                  "from the true ground eigenvector; nonzero by erratum"},
    ))

    return reports


def main():
    reports = mint()
    out = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "golden.json")
    payload = [dataclasses.asdict(r) for r in reports]
    with open(out, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    failed = [r.quantity for r in reports if not r.passed]
    print(f"wrote {out}: {len(reports)} records, {len(failed)} failing")
    for q in failed:
        print(f"  FAIL {q}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
