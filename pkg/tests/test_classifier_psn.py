"""Pseudo null slant conditions, axes, and the two-route 2-type verdict."""

import numpy as np
import pytest

from lcl import (CurvatureProfile, Verdict, classify_profile, integrate_frame,
                 pairing, psn_implication_closure, psn_type0_check,
                 psn_type1_axis, psn_type1_check, psn_type2_axis,
                 psn_type2_check, psn_type3_check, validate_axis)
from lcl.errors import ProfileError
from lcl.hyperbolic import make_h3_type2_profile

Y, N, U = Verdict.YES, Verdict.NO, Verdict.UNDETERMINED


def test_quadratic_ratio_is_1_type_with_recovered_coefficients(
        quad_psn_profile):
    # sigma/tau = -s^2/2 + 0.5 s, so a = 0.5 and b = 0
    res = psn_type1_check(quad_psn_profile)
    assert res.verdict is Y
    assert res.constants["a"].value == pytest.approx(0.5, abs=1e-9)
    assert res.constants["b"].value == pytest.approx(0.0, abs=1e-9)
    assert res.residual < 1e-9


def test_shifted_quadratic_recovers_both_coefficients():
    p = CurvatureProfile.create("pseudo_null", tau="1",
                                sigma="-s^2/2 + 0.3*s + 0.1",
                                domain=(0.0, 2.0))
    res = psn_type1_check(p)
    assert res.verdict is Y
    assert res.constants["a"].value == pytest.approx(0.3, abs=1e-9)
    assert res.constants["b"].value == pytest.approx(0.1, abs=1e-9)


def test_wrong_quadratic_coefficient_is_rejected():
    # leading coefficient -1 instead of -1/2 breaks the required shape
    p = CurvatureProfile.create("pseudo_null", tau="1", sigma="-s^2 + s",
                                domain=(0.0, 1.0))
    res = psn_type1_check(p)
    assert res.verdict is N
    assert res.residual > 1e-3


def test_generic_ratio_is_not_1_type():
    p = CurvatureProfile.create("pseudo_null", tau="1", sigma="exp(s)",
                                domain=(0.0, 1.5))
    assert psn_type1_check(p).verdict is N


def test_1_type_axis_has_unit_normal_pairing(quad_psn_profile,
                                             quad_psn_trace):
    cand = psn_type1_axis(quad_psn_profile, quad_psn_trace)
    assert cand.source == "ratio-derivative"
    val = validate_axis(quad_psn_trace, cand)
    assert val.passed
    f0 = quad_psn_trace.frames[0]
    assert pairing(cand.U[0], f0[1]) == pytest.approx(1.0, abs=1e-9)
    assert pairing(cand.U[0], f0[2]) == pytest.approx(0.0, abs=1e-9)
    assert np.allclose(cand.u_at_start(), [-0.5, 0.5, -0.5, 0.0], atol=1e-8)


def test_1_type_axis_relabels_for_the_binormal_claim(quad_psn_profile,
                                                     quad_psn_trace):
    cand = psn_type1_axis(quad_psn_profile, quad_psn_trace, k=2)
    assert cand.k == 2
    val = validate_axis(quad_psn_trace, cand)
    assert val.passed


def test_2_type_identity_route_on_the_exponential_family(h3_profile):
    res = psn_type2_check(h3_profile)
    assert res.verdict is Y
    assert res.extras["branch"] == "torsion-integral"
    assert res.residual < 1e-6
    assert res.constants["c_int"].value == pytest.approx(1.0, abs=1e-6)


def test_2_type_quadratic_route_when_the_identity_fails(quad_psn_profile):
    res = psn_type2_check(quad_psn_profile)
    assert res.verdict is Y
    assert res.extras["branch"] == "ratio-quadratic"
    # the identity residual itself stays large on this family
    assert res.residual > 1e-4
    assert any("zero-pairing" in f for f in res.flags)


def test_2_type_fails_when_neither_route_holds():
    p = CurvatureProfile.create("pseudo_null", tau="1", sigma="exp(s)",
                                domain=(0.0, 1.5))
    res = psn_type2_check(p)
    assert res.verdict is N
    assert res.extras["branch"] is None


def test_2_type_axis_on_the_identity_route(h3_profile, h3_trace):
    res = psn_type2_check(h3_profile)
    cand = psn_type2_axis(h3_profile, h3_trace, res.constants["c_int"].value)
    assert cand.source == "torsion-integral"
    val = validate_axis(h3_trace, cand)
    assert val.passed
    assert np.allclose(cand.u_at_start(), [-2.5, -1.5, 6.0, 1.0], atol=1e-6)
    # unit B1 pairing by construction
    assert pairing(cand.U[0], h3_trace.frames[0][2]) == pytest.approx(
        1.0, abs=1e-9)


def test_0_type_is_always_refuted_by_the_oracle(quad_psn_trace,
                                                quad_psn_profile):
    res = psn_type0_check(quad_psn_profile, quad_psn_trace)
    assert res.verdict is N
    assert res.residual > 1e-3  # oracle margin, not a fitted residual


def test_3_type_follows_the_oracle(quad_psn_profile, quad_psn_trace):
    res = psn_type3_check(quad_psn_profile, quad_psn_trace)
    assert res.verdict is N
    assert "closed_form_residual" in res.extras


def test_closure_only_lifts_1_type_to_2_type():
    closed, notes, inc = psn_implication_closure({1: Y})
    assert closed[2] is Y
    assert closed[0] is U and closed[3] is U
    assert not inc
    closed2, _, inc2 = psn_implication_closure({1: Y, 2: N})
    assert inc2


def test_checks_reject_wrong_frame_kind(circle_profile):
    with pytest.raises(ProfileError):
        psn_type1_check(circle_profile)


def test_classify_quadratic_report(quad_psn_profile):
    rep = classify_profile(quad_psn_profile)
    assert {k: v for k, v in rep.verdicts.items()} == {0: N, 1: Y, 2: Y, 3: N}
    assert all(rep.agreement[k] for k in range(4))
    sources = {c.source for c, _ in rep.axes}
    assert "ratio-derivative" in sources
    assert all(v.passed for _, v in rep.axes)
    # not a pseudohyperbolic member: the ratio is not constant
    assert rep.pseudohyperbolic["is_h3_family"] is False


def test_classify_exponential_member_report(h3_profile):
    rep = classify_profile(h3_profile)
    assert {k: v for k, v in rep.verdicts.items()} == {0: N, 1: N, 2: Y, 3: N}
    assert rep.pseudohyperbolic["is_h3_family"] is True
    assert rep.pseudohyperbolic["c_ratio"] == pytest.approx(-2.0, abs=1e-9)
    assert all(rep.agreement[k] for k in range(4))


def test_classify_generic_pseudo_null():
    p = CurvatureProfile.create("pseudo_null", tau="1", sigma="exp(s)",
                                domain=(0.0, 1.5), label="generic")
    rep = classify_profile(p)
    assert {k: v for k, v in rep.verdicts.items()} == {0: N, 1: N, 2: N, 3: N}
    assert all(rep.agreement[k] for k in range(4))


def test_missing_sigma_is_a_profile_error():
    with pytest.raises(ProfileError):
        CurvatureProfile.create("pseudo_null", tau="1", domain=(0.0, 1.0))
