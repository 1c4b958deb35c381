import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import adiasearch as a
from adiasearch.errors import InvalidArgumentError
from adiasearch.spectrum import dh_ds_matrix_element, drive_matrix_element, eig2, gap_quadratic


def test_eigensystem_diagonal():
    sp = a.eigensystem(a.EffectiveHamiltonian(s=1.0, h_mm=0.0, h_pp=1.0, h_mp=0.0))
    assert sp.E0 == 0.0 and sp.E1 == 1.0
    assert np.allclose(sp.v0, [1, 0]) and np.allclose(sp.v1, [0, 1])


def test_eigensystem_symmetric_offdiag():
    sp = a.eigensystem(a.EffectiveHamiltonian(s=0.5, h_mm=0.5, h_pp=0.5, h_mp=-0.25))
    assert sp.E0 == pytest.approx(0.25, abs=1e-15)
    assert sp.E1 == pytest.approx(0.75, abs=1e-15)
    assert sp.gap == pytest.approx(0.5, abs=1e-15)


def test_eigensystem_s0_ground_state_is_uniform(inst64, quadratic):
    sp = a.spectrum_point(inst64, quadratic, 0.0)
    assert sp.E0 == pytest.approx(0.0, abs=1e-15)
    assert sp.E1 == pytest.approx(1.0, abs=1e-15)
    psi0 = a.initial_state(inst64)
    assert np.allclose(sp.v0, [psi0.amp_m, psi0.amp_perp], atol=1e-14)


@given(
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-5, max_value=5),
)
@settings(max_examples=200)
def test_eig2_residuals_and_orthogonality(hmm, hpp, hmp):
    E0, E1, v0, v1 = eig2(hmm, hpp, hmp)
    H = np.array([[hmm, hmp], [hmp, hpp]])
    assert E0 <= E1
    assert np.linalg.norm(H @ v0 - E0 * v0) < 1e-12 * max(1, abs(E0))
    assert np.linalg.norm(H @ v1 - E1 * v1) < 1e-12 * max(1, abs(E1))
    assert abs(v0 @ v1) < 1e-12
    assert v0[0] >= 0 and v1[0] >= 0


def test_gap_closed_form_endpoints_and_minimum(inst64):
    assert a.gap_closed_form(inst64, 0.0) == pytest.approx(1.0, abs=0)
    assert a.gap_closed_form(inst64, 1.0) == pytest.approx(1.0, abs=0)
    assert a.gap_closed_form(inst64, 0.5) == pytest.approx(0.625, abs=0)


def test_gap_closed_form_rejects_other_profiles(inst64, plain):
    with pytest.raises(InvalidArgumentError):
        a.gap_closed_form(inst64, 0.5, plain)


def test_gap_closed_form_n4():
    inst = a.make_instance(2)
    assert a.gap_closed_form(inst, 0.25) == pytest.approx(np.sqrt(61) / 8, abs=1e-15)


@pytest.mark.parametrize("k", [2, 4, 8, 12, 16, 20])
def test_gap_identity_against_eigensystem(k, quadratic, grid_gap):
    inst = a.make_instance(k)
    s, g_num = grid_gap(inst, quadratic)
    g_cf = gap_quadratic(inst.x, s)
    assert np.abs(g_num - g_cf).max() < 1e-12


def test_gap_symmetry_in_x_to_zero_limit(quadratic):
    # at x -> 0 the gap is symmetric about s = 1/2
    x = 1e-8
    s = np.linspace(0.0, 1.0, 501)
    g = gap_quadratic(x, s)
    assert np.abs(g - g[::-1]).max() < 1e-7


def test_min_gap_quadratic(inst64, quadratic):
    rep = a.min_gap(inst64, quadratic)
    assert rep.method == "closed_form"
    assert rep.s_star == 0.5
    assert rep.g_min == pytest.approx(0.625, abs=0)


def test_min_gap_quadratic_small_n_branches(quadratic):
    # at N=4 the minimum moves off-center; at N=2 it sits at the endpoints
    for n in (1, 2):
        inst = a.make_instance(n)
        rep = a.min_gap(inst, quadratic)
        s = np.linspace(0.0, 1.0, 200001)
        g = gap_quadratic(inst.x, s)
        assert rep.g_min == pytest.approx(g.min(), abs=1e-9)
        assert abs(rep.s_star - s[np.argmin(g)]) < 1e-4
    inst4 = a.make_instance(2)
    c = 1 - inst4.x * (inst4.x + 1)
    assert a.min_gap(inst4, quadratic).g_min == pytest.approx(np.sqrt(1 - c * c), abs=1e-15)
    assert a.min_gap(a.make_instance(1), quadratic).g_min == 1.0


def test_min_gap_plain(inst64, plain):
    rep = a.min_gap(inst64, plain)
    assert rep.method == "closed_form"
    assert rep.s_star == 0.5
    assert rep.g_min == 0.125
    # closed form agrees with a direct golden-section search
    from adiasearch.spectrum import _golden_min

    s_star, g = _golden_min(lambda s: float(a.gap_numeric(inst64, plain, s)), 0.0, 1.0, 1e-12)
    assert g == pytest.approx(0.125, abs=1e-12)


def test_min_gap_sqrt_product_larger_than_quadratic(sqrt_product, quadratic):
    inst = a.make_instance(10)
    assert a.min_gap(inst, sqrt_product).g_min > a.min_gap(inst, quadratic).g_min


def test_eigenvector_closed_form_endpoints(inst64):
    v = a.eigenvector_closed_form(inst64, 1.0, 0)
    assert v.amp_m == pytest.approx(1.0, abs=1e-14)
    assert v.amp_perp == pytest.approx(0.0, abs=1e-14)
    v0 = a.eigenvector_closed_form(inst64, 0.0, 0)
    psi0 = a.initial_state(inst64)
    assert v0.amp_m == pytest.approx(psi0.amp_m, abs=1e-14)
    assert v0.amp_perp == pytest.approx(psi0.amp_perp, abs=1e-14)


def test_eigenvector_closed_form_deviation_is_the_known_erratum(inst64, quadratic):
    # the published expressions disagree with the true eigenvectors away
    # from the endpoints; the deviation is real but bounded (see README)
    devs = []
    for s in np.linspace(0.05, 0.95, 19):
        cf = a.eigenvector_closed_form(inst64, float(s), 0)
        sp = a.spectrum_point(inst64, quadratic, float(s))
        devs.append(max(abs(cf.amp_m - sp.v0[0]), abs(cf.amp_perp - sp.v0[1])))
    assert max(devs) > 1e-9  # genuinely not the same formula
    assert max(devs) < 5e-3  # but close: consistent with a typo, not nonsense


def test_dh_ds_matches_finite_difference(inst1024):
    d = 1e-6
    for kind in ("none", "quadratic", "sqrt_product", "alt"):
        profile = a.get_profile(kind)
        for s in (0.11, 0.37, 0.5, 0.82):
            def entry_mat(sv):
                from adiasearch.model import hamiltonian_entries

                av = float(profile.coefficient(sv))
                hmm, hpp, hmp = hamiltonian_entries(inst1024.x, sv, av)
                return np.array([[hmm, hmp], [hmp, hpp]])

            M = (entry_mat(s + d) - entry_mat(s - d)) / (2 * d)
            sp = a.spectrum_point(inst1024, profile, s)
            fd = abs(sp.v1 @ M @ sp.v0)
            assert a.dh_ds_matrix_element(inst1024, profile, s) == pytest.approx(fd, abs=1e-6)


def test_dh_ds_quadratic_x_to_zero_midpoint():
    inst = a.make_instance(40)
    val = a.dh_ds_matrix_element(inst, a.get_profile("quadratic"), 0.5)
    assert val == pytest.approx(1.0, abs=1e-5)


def test_drive_element_bounded_by_one(inst1024):
    s = np.linspace(0.0, 1.0, 2001)
    vals = drive_matrix_element(inst1024, s)
    assert vals.max() <= 1.0 + 1e-9
    assert abs(s[np.argmax(vals)] - 0.5) < 0.01


def test_drive_element_equals_analytic_derivative_at_midpoint(inst64, quadratic):
    # a'(1/2) = 0, so the sign difference on the drive term vanishes there
    assert drive_matrix_element(inst64, 0.5) == pytest.approx(
        dh_ds_matrix_element(inst64, quadratic, 0.5), abs=1e-14
    )


def test_fig1_qualitative_shape(inst64, quadratic, grid_gap):
    s, g = grid_gap(inst64, quadratic, 513)
    sp0 = a.spectrum_point(inst64, quadratic, 0.0)
    sp1 = a.spectrum_point(inst64, quadratic, 1.0)
    assert sp0.E0 == pytest.approx(0.0, abs=1e-14)
    assert sp1.E0 == pytest.approx(0.0, abs=1e-14)
    assert sp0.E1 == pytest.approx(1.0, abs=1e-14)
    assert sp1.E1 == pytest.approx(1.0, abs=1e-14)
    assert s[np.argmin(g)] == pytest.approx(0.5, abs=1e-12)
