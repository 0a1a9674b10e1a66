import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isokit.classify import (ClassifyConfig, Verdict, classify_curve, classify_frames,
                             fit_normal_development, frenet_criterion, sphere_drift, tls_line)
from isokit.errors import InsufficientDataError
from isokit.frames import frenet, rm_frames
from isokit.spaces import IsoMotion, SpaceKind
from isokit.testcurves import (cylindrical_curve, euclidean_helix, euclidean_plane_curve, helix,
                               hyperbolic_helix, parabolic_curve, perturbed, planar_circle,
                               plane_curve, spherical_spiral)

ISO, PSEUDO, EUC = SpaceKind.ISOTROPIC, SpaceKind.PSEUDO, SpaceKind.EUCLIDEAN


def test_tls_line_is_orthogonal_regression():
    x = np.linspace(-1, 1, 50)
    pts = np.stack([x, 2 * x + 3], -1)
    a, c, res, spread = tls_line(pts)
    assert abs(np.linalg.norm(a) - 1) < 1e-12 and c >= 0
    assert c == pytest.approx(3 / np.sqrt(5))
    assert np.max(np.abs(res)) < 1e-12 and spread > 0
    # symmetric in the two coordinates, unlike ordinary regression
    b, d, _, _ = tls_line(pts[:, ::-1])
    assert d == pytest.approx(c) and np.allclose(np.abs(b), np.abs(a[::-1]))


def test_helix_development():
    dev = fit_normal_development(rm_frames(helix()))
    a1, a2, c = dev.line
    assert abs(abs(a1) - 1) < 1e-9 and c == pytest.approx(1.0, abs=1e-9)
    assert dev.verdict is Verdict.SPHERICAL_CYLINDRICAL and dev.radius == pytest.approx(1.0)
    assert dev.cylindrical and not dev.planar


def test_planar_circle_point_development():
    dev = fit_normal_development(rm_frames(planar_circle(), 0.7))
    assert dev.degenerate_point and dev.verdict is Verdict.PLANE
    assert dev.planar and dev.cylindrical and dev.radius == pytest.approx(1.0)


@pytest.mark.parametrize("kind", [ISO, PSEUDO])
def test_plane_curve(kind):
    assert classify_curve(plane_curve(kind)).verdict is Verdict.PLANE


@pytest.mark.parametrize("kind", [ISO, PSEUDO])
@pytest.mark.parametrize("p", [0.5, 2.0])
def test_parabolic_sphere(kind, p):
    rep = classify_curve(parabolic_curve(kind, p))
    dev = rep.development
    assert rep.verdict is Verdict.SPHERICAL_PARABOLIC
    assert dev.rms_residual <= 1e-4 * dev.scale
    assert dev.origin_distance > 10 * dev.origin_tol
    assert rep.cross_check["constant"] and rep.cross_check["drift"] <= 1e-4


@pytest.mark.parametrize("kind", [ISO, PSEUDO])
@pytest.mark.parametrize("r", [0.5, 2.0])
def test_cylindrical_sphere(kind, r):
    rep = classify_curve(cylindrical_curve(kind, r))
    assert rep.verdict is Verdict.SPHERICAL_CYLINDRICAL
    assert np.max(np.abs(np.abs(rep.frames.kappa) - 1 / r)) <= 1e-4
    assert rep.development.radius == pytest.approx(r, rel=1e-6)


def test_pseudo_hyperbolic_helix_is_cylindrical():
    assert classify_curve(hyperbolic_helix()).verdict is Verdict.SPHERICAL_CYLINDRICAL


@pytest.mark.parametrize("kind", [ISO, PSEUDO])
def test_perturbed_parabolic_is_generic(kind):
    rep = classify_curve(perturbed(parabolic_curve)(kind, 1.0))
    assert rep.verdict is Verdict.GENERIC
    assert not rep.cross_check["constant"]


def test_euclidean_verdicts():
    rep = classify_curve(spherical_spiral())
    assert rep.verdict is Verdict.SPHERICAL
    assert rep.development.rms_residual <= 1e-4
    assert rep.cross_check["center_drift"] <= 1e-5
    assert classify_curve(euclidean_plane_curve()).verdict is Verdict.PLANE
    assert classify_curve(perturbed(spherical_spiral)()).verdict is Verdict.GENERIC
    # a helix lies on no sphere; its development is a circle around the origin
    assert classify_curve(euclidean_helix()).verdict is Verdict.GENERIC


def test_euclidean_agrees_with_distance_to_center():
    curve = spherical_spiral(center=(1.0, 2.0, -1.0), radius=2.0)
    pts = curve(curve.grid())
    dist = np.linalg.norm(pts - np.array([1.0, 2.0, -1.0]), axis=-1)
    assert np.ptp(dist) < 1e-12
    assert classify_curve(curve).verdict.spherical


def test_three_criteria_agree_in_isotropic_space():
    cases = [(parabolic_curve(ISO, 1.0), True), (perturbed(parabolic_curve)(ISO, 1.0), False)]
    for curve, spherical in cases:
        rep = classify_curve(curve)
        assert rep.verdict.spherical is spherical
        assert rep.cross_check["constant"] is spherical
        assert (rep.frenet_criterion <= 1e-4) is spherical


@pytest.mark.parametrize("tau0", [-1.0, 0.0, 1.0, 3.5])
@pytest.mark.parametrize("factory", [helix, planar_circle, lambda: parabolic_curve(PSEUDO, 1.0),
                                     lambda: perturbed(parabolic_curve)(ISO, 1.0),
                                     spherical_spiral])
def test_verdict_independent_of_gauge(factory, tau0):
    curve = factory()
    assert classify_curve(curve, tau0=tau0).verdict is classify_curve(curve).verdict


@settings(max_examples=10)
@given(kind=st.sampled_from([ISO, PSEUDO]), params=st.tuples(*[st.floats(-1.5, 1.5)] * 6),
       which=st.sampled_from(["parabolic", "plane", "perturbed"]))
def test_verdict_invariant_under_motions(kind, params, which):
    factory = {"parabolic": lambda: parabolic_curve(kind, 1.0, samples=800),
               "plane": lambda: plane_curve(kind, samples=800),
               "perturbed": lambda: perturbed(parabolic_curve)(kind, 1.0, samples=800)}[which]
    curve = factory()
    moved = curve.transformed(IsoMotion(kind, *params))
    assert classify_curve(moved).verdict is classify_curve(curve).verdict


def test_frenet_criterion_only_isotropic():
    assert frenet_criterion(rm_frames(hyperbolic_helix())) is None
    assert frenet_criterion(rm_frames(planar_circle())) is None


def test_sphere_drift_none_for_planes():
    assert sphere_drift(rm_frames(planar_circle())) is None


def test_report_json_fields():
    data = classify_curve(parabolic_curve(ISO, 1.0)).to_json()
    assert data["verdict"] == "SphericalParabolic"
    for key in ("development", "cross_check", "frenet_criterion", "tau0", "eps", "length"):
        assert key in data
    assert set(data["development"]["line"]) == {"a1", "a2", "c"}


def test_explicit_tolerances_are_used():
    frames = rm_frames(perturbed(parabolic_curve)(ISO, 1.0))
    loose = fit_normal_development(frames).rms_residual * 2
    rep = classify_frames(frames, ClassifyConfig(tol=loose, origin_tol=1e-3))
    assert rep.verdict is Verdict.SPHERICAL_PARABOLIC
    assert rep.development.tol == loose


def test_needs_rm_frames_and_samples():
    with pytest.raises(InsufficientDataError):
        fit_normal_development(frenet(helix()))
    short = rm_frames(helix(samples=10))
    with pytest.raises(InsufficientDataError):
        fit_normal_development(short.replace(s=short.s[:5], kappa1=short.kappa1[:5],
                                             kappa2=short.kappa2[:5], kappa=short.kappa[:5]))
