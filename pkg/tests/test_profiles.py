"""Curvature profile construction, validation, and JSON round-trips."""

import json

import numpy as np
import pytest

from lcl import CurvatureProfile, FrameKind, load_profile, save_profile
from lcl.errors import ProfileError
from lcl.profiles import SampleTable


def test_create_partially_null_defaults_sigma_to_zero():
    p = CurvatureProfile.create("partially_null", kappa="2", tau="1")
    k, t, sg = p.evaluate(0.5)
    assert (k, t, sg) == (2.0, 1.0, 0.0)
    assert p.kind is FrameKind.PARTIALLY_NULL


def test_create_pseudo_null_defaults_kappa_to_one():
    p = CurvatureProfile.create("pseudo_null", tau="2", sigma="-s^2 + s",
                                domain=(0.0, 1.0))
    k, t, sg = p.evaluate(0.5)
    assert k == 1.0
    assert t == 2.0
    assert sg == pytest.approx(0.25)


def test_create_accepts_kind_enum_or_string():
    a = CurvatureProfile.create(FrameKind.PARTIALLY_NULL, kappa="1", tau="1")
    b = CurvatureProfile.create("partially_null", kappa="1", tau="1")
    assert a.kind is b.kind


def test_create_rejects_unknown_kind():
    with pytest.raises((ProfileError, ValueError)):
        CurvatureProfile.create("totally_null", kappa="1", tau="1")


def test_create_rejects_backwards_domain():
    with pytest.raises(ProfileError):
        CurvatureProfile.create("partially_null", kappa="1", tau="1",
                                domain=(1.0, 0.0))


def test_pseudo_null_requires_tau_and_sigma():
    with pytest.raises(ProfileError):
        CurvatureProfile.create("pseudo_null", tau="1")


def test_partially_null_requires_kappa_and_tau():
    with pytest.raises(ProfileError):
        CurvatureProfile.create("partially_null", kappa="1")


def test_validate_rejects_vanishing_kappa():
    p = CurvatureProfile.create("partially_null", kappa="s - 0.5", tau="1",
                                domain=(0.0, 1.0))
    with pytest.raises(ProfileError):
        p.validate()


def test_validate_rejects_tau_sign_change():
    p = CurvatureProfile.create("partially_null", kappa="1", tau="s - 0.5",
                                domain=(0.0, 1.0))
    with pytest.raises(ProfileError):
        p.validate()


def test_pseudo_null_sigma_may_cross_zero():
    # the quadratic family crosses zero inside the domain by design;
    # nothing divides by sigma, so this validates with only a warning
    p = CurvatureProfile.create("pseudo_null", tau="1",
                                sigma="-s^2/2 + 0.3*s + 0.1",
                                domain=(0.0, 2.0))
    p.validate()


def test_pseudo_null_tau_zero_is_still_fatal():
    p = CurvatureProfile.create("pseudo_null", tau="s - 0.5", sigma="1",
                                domain=(0.0, 1.0))
    with pytest.raises(ProfileError):
        p.validate()


def test_evaluate_arrays_matches_scalar_evaluate():
    p = CurvatureProfile.create("partially_null", kappa="1 + s^2",
                                tau="2 + sin(s)", domain=(0.0, 2.0))
    grid = np.linspace(0.0, 2.0, 17)
    ka, ta, sa = p.evaluate_arrays(grid)
    for i, s in enumerate(grid):
        k, t, sg = p.evaluate(float(s))
        assert ka[i] == pytest.approx(k, abs=1e-15)
        assert ta[i] == pytest.approx(t, abs=1e-15)
        assert sa[i] == pytest.approx(sg, abs=1e-15)


def test_grid_spans_the_domain():
    p = CurvatureProfile.create("partially_null", kappa="1", tau="1",
                                domain=(0.25, 1.75))
    g = p.grid(101)
    assert g[0] == 0.25 and g[-1] == 1.75 and len(g) == 101


def test_json_round_trip_preserves_evaluation():
    p = CurvatureProfile.create("pseudo_null", tau="2 + s",
                                sigma="-s^2/2 + 0.1", domain=(0.0, 1.5),
                                label="round-trip")
    q = CurvatureProfile.from_json_dict(p.to_json_dict())
    assert q.label == "round-trip"
    assert q.kind is p.kind
    assert q.domain == p.domain
    for s in np.linspace(0.0, 1.5, 7):
        assert q.evaluate(float(s)) == pytest.approx(p.evaluate(float(s)))


def test_save_and_load_profile(tmp_path):
    p = CurvatureProfile.create("partially_null", kappa="2", tau="6",
                                domain=(0.0, 1.0), label="disk")
    path = tmp_path / "p.json"
    save_profile(p, path)
    q = load_profile(path)
    assert q.label == "disk"
    assert q.evaluate(0.3) == pytest.approx(p.evaluate(0.3))
    # the file itself is plain JSON with the documented keys
    obj = json.loads(path.read_text())
    assert set(obj) >= {"kind", "domain", "kappa", "tau"}


def test_from_json_dict_rejects_missing_component():
    with pytest.raises(ProfileError):
        CurvatureProfile.from_json_dict({"kind": "pseudo_null",
                                         "domain": [0.0, 1.0], "tau": "1"})


def test_sample_table_interpolates_monotonically():
    s = np.linspace(0.0, 1.0, 9)
    table = SampleTable(s, 1.0 + s**2)
    mid = table(0.5)
    assert mid == pytest.approx(1.25, abs=1e-3)
    fine = table(np.linspace(0.0, 1.0, 101))
    assert np.all(np.diff(fine) > 0)


def test_sample_table_rejects_unsorted_or_short_input():
    with pytest.raises(ProfileError):
        SampleTable(np.array([0.0, 2.0, 1.0]), np.array([1.0, 1.0, 1.0]))
    with pytest.raises(ProfileError):
        SampleTable(np.array([0.0]), np.array([1.0]))


def test_profile_with_sampled_component():
    s = np.linspace(0.0, 1.0, 33)
    p = CurvatureProfile.create(
        "partially_null", kappa=SampleTable(s, 2.0 + np.sin(s)), tau="1",
        domain=(0.0, 1.0))
    k, _, _ = p.evaluate(0.5)
    assert k == pytest.approx(2.0 + np.sin(0.5), abs=1e-6)
    # sampled components survive the JSON round-trip as tables
    q = CurvatureProfile.from_json_dict(p.to_json_dict())
    k2, _, _ = q.evaluate(0.5)
    assert k2 == pytest.approx(k, abs=1e-12)
