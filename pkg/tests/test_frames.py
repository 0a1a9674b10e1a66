import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isokit.curve import Curve
from isokit.errors import InvalidInputError, NonAdmissibleError, SpeedError
from isokit.frames import (FRAME_CSV_COLUMNS, curvature_identity_residual, frame_rows, frenet,
                           frenet_euclidean, frenet_isotropic, frenet_pseudo, integrate_torsion,
                           ode_residuals, orientation, rm_frame_euclidean, rm_frames)
from isokit.spaces import IsoMotion, SpaceKind
from isokit.testcurves import (cos, cosh, euclidean_helix, helix, hyperbolic_helix,
                               jet_curve, planar_circle, random_curve, sin, sinh)

ISO, PSEUDO, EUC = SpaceKind.ISOTROPIC, SpaceKind.PSEUDO, SpaceKind.EUCLIDEAN


def det_oracle(curve, t):
    """kappa and tau straight from determinants of derivatives in the curve's own parameter."""
    d1, d2, d3 = (curve.derivative(t, k) for k in (1, 2, 3))
    top = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
    speed = np.sqrt(np.abs(d1[..., 0] ** 2 + (1 if curve.kind is ISO else -1) * d1[..., 1] ** 2))
    return top / speed ** 3, np.linalg.det(np.stack([d1, d2, d3], -2)) / top ** 2


@pytest.fixture(scope="module")
def helix_frames():
    return rm_frames(helix())


def test_isotropic_helix_known_values(helix_frames):
    f = helix_frames
    s = f.s
    np.testing.assert_allclose(f.kappa, 1.0, atol=1e-12)
    np.testing.assert_allclose(f.tau, 1.0, atol=1e-12)
    np.testing.assert_allclose(f.t, np.stack([-np.sin(s), np.cos(s), np.ones_like(s)], -1), atol=1e-12)
    np.testing.assert_allclose(f.n, np.stack([-np.cos(s), -np.sin(s), 0 * s], -1), atol=1e-12)
    np.testing.assert_allclose(f.b, np.tile([0, 0, 1.0], (len(s), 1)), atol=1e-12)


def test_isotropic_helix_rm_frame(helix_frames):
    f = helix_frames
    s = f.s
    np.testing.assert_allclose(f.theta, s, atol=1e-10)
    np.testing.assert_allclose(f.n1, f.n - s[:, None] * f.b, atol=1e-10)
    np.testing.assert_allclose(f.kappa1, 1.0, atol=1e-12)
    np.testing.assert_allclose(f.kappa2, s, atol=1e-10)


def test_isotropic_helix_bivectors(helix_frames):
    f = helix_frames
    s = f.s
    np.testing.assert_allclose(f.T, np.stack([-np.sin(s), np.cos(s), 0 * s], -1), atol=1e-12)
    dets = np.linalg.det(np.stack([f.T, f.N, f.B], -2))
    np.testing.assert_allclose(dets, 1.0, atol=1e-12)
    np.testing.assert_allclose(orientation(f), 1.0, atol=1e-12)


def test_planar_circle():
    f = rm_frames(planar_circle())
    np.testing.assert_allclose(f.kappa, 1.0, atol=1e-12)
    np.testing.assert_allclose(f.tau, 0.0, atol=1e-12)
    np.testing.assert_allclose(f.n1, f.n, atol=1e-12)
    np.testing.assert_allclose(f.kappa2, 0.0, atol=1e-12)


def test_radius_scales_curvature():
    f = frenet(planar_circle(radius=2.5))
    np.testing.assert_allclose(f.kappa, 0.4, atol=1e-12)


def test_pseudo_spacelike_helix_sign_rule():
    f = rm_frames(hyperbolic_helix())
    assert (f.eps, f.eta) == (1, -1)
    # kappa = -eps (x'y'' - x''y') with x'y'' - x''y' = cosh^2 - sinh^2 = 1
    np.testing.assert_allclose(f.kappa, -1.0, atol=1e-12)


def test_pseudo_timelike_helix_sign_rule():
    c = jet_curve(PSEUDO, [cosh, sinh, lambda t: t], -1.0, 1.0)
    f = rm_frames(c)
    assert (f.eps, f.eta) == (-1, 1)
    # x'y'' - x''y' = sinh^2 - cosh^2 = -1, so kappa = -eps * (-1) = -1
    np.testing.assert_allclose(f.kappa, -1.0, atol=1e-12)
    np.testing.assert_allclose(np.abs(f.kappa), 1.0, atol=1e-12)


@pytest.mark.parametrize("factory", [helix, planar_circle, hyperbolic_helix])
def test_torsion_matches_determinant_oracle(factory):
    curve = factory()
    f = frenet(curve)
    t = f.param
    k, tau = det_oracle(curve, t)
    if curve.kind is PSEUDO:
        k = -f.eps * k
    np.testing.assert_allclose(f.kappa, k, atol=1e-10)
    np.testing.assert_allclose(f.tau, tau, atol=1e-10)


def test_torsion_is_parametrization_independent():
    # the isotropic helix traced with t -> t**2 + t
    c = jet_curve(ISO, [lambda t: cos(t * t + t), lambda t: sin(t * t + t), lambda t: t * t + t],
                  0.0, 2.0)
    f = frenet(c)
    np.testing.assert_allclose(f.kappa, 1.0, atol=1e-10)
    np.testing.assert_allclose(f.tau, 1.0, atol=1e-10)


def test_finite_difference_curve_agrees_with_exact():
    spec = Curve.from_spec({"space": "isotropic", "x": "cos(t)", "y": "sin(t)", "z": "t",
                            "t_min": 0, "t_max": 2 * math.pi, "samples": 2000})
    f = frenet(spec)
    np.testing.assert_allclose(f.kappa, 1.0, atol=1e-6)
    np.testing.assert_allclose(f.tau, 1.0, atol=1e-6)


def test_euclidean_helix_and_bishop_circle():
    f = rm_frames(euclidean_helix())
    np.testing.assert_allclose(f.kappa, 0.5, atol=1e-12)
    np.testing.assert_allclose(f.tau, 0.5, atol=1e-12)
    np.testing.assert_allclose(np.hypot(f.kappa1, f.kappa2), 0.5, atol=1e-10)
    # theta is linear in s with slope tau
    np.testing.assert_allclose(np.diff(f.theta) / np.diff(f.s), 0.5, atol=1e-8)


def test_euclidean_rm_frames_differ_by_constant_rotation():
    c = euclidean_helix()
    a = rm_frame_euclidean(c)
    n0 = a.t[0]
    alt = math.cos(0.8) * a.n1[0] + math.sin(0.8) * a.n2[0]
    b = rm_frame_euclidean(c, initial_normal=alt)
    ang = np.arctan2(np.sum(np.cross(a.n1, b.n1) * a.t, -1), np.sum(a.n1 * b.n1, -1))
    np.testing.assert_allclose(ang, ang[0], atol=1e-8)
    assert abs(ang[0] - 0.8) < 1e-10
    with pytest.raises(InvalidInputError):
        rm_frame_euclidean(c, initial_normal=n0)


@pytest.mark.parametrize("tau0", [-1.0, 0.5, 2.0])
def test_rm_gauge_shift_rotates_development(helix_frames, tau0):
    g = rm_frames(helix(), tau0)
    np.testing.assert_allclose(g.theta - helix_frames.theta, tau0, atol=1e-12)
    np.testing.assert_allclose(g.kappa2 - helix_frames.kappa2, tau0, atol=1e-10)


def test_integrate_torsion_simpson():
    s = np.linspace(0, 2, 201)
    np.testing.assert_allclose(integrate_torsion(s, 3 * s ** 2, 1.0), s ** 3 + 1, atol=1e-12)


@pytest.mark.parametrize("factory", [helix, planar_circle, hyperbolic_helix, euclidean_helix])
def test_ode_residuals_small(factory):
    res = ode_residuals(rm_frames(factory()))
    assert max(res.values()) <= 1e-6, res


@pytest.mark.parametrize("kind", [ISO, PSEUDO])
@settings(max_examples=6)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_random_curves_satisfy_frame_equations(kind, seed):
    curve = random_curve(kind, np.random.default_rng(seed))
    f = rm_frames(curve)
    res = ode_residuals(f)
    assert max(res.values()) <= 1e-5, res
    assert curvature_identity_residual(f) <= 1e-4


@settings(max_examples=8)
@given(seed=st.integers(0, 2 ** 32 - 1), kind=st.sampled_from([ISO, PSEUDO]),
       params=st.tuples(*[st.floats(-1.5, 1.5)] * 6))
def test_invariants_unchanged_by_motions(seed, kind, params):
    curve = random_curve(kind, np.random.default_rng(seed), samples=400)
    f = frenet(curve)
    g = frenet(curve.transformed(IsoMotion(kind, *params)))
    np.testing.assert_allclose(g.kappa, f.kappa, atol=1e-8 * max(1, np.max(np.abs(f.kappa))))
    np.testing.assert_allclose(g.tau, f.tau, atol=1e-7 * max(1, np.max(np.abs(f.tau))))


def test_wrong_space_and_non_admissible_inputs():
    with pytest.raises(InvalidInputError):
        frenet_pseudo(helix())
    with pytest.raises(InvalidInputError):
        frenet_isotropic(hyperbolic_helix())
    with pytest.raises(InvalidInputError):
        frenet_euclidean(helix())
    lightlike = jet_curve(PSEUDO, [lambda t: t, lambda t: t, lambda t: t * t], 0.0, 1.0)
    with pytest.raises((NonAdmissibleError, SpeedError)) as err:
        frenet(lightlike)
    assert "light" in str(err.value) or "speed" in str(err.value)
    line = jet_curve(EUC, [lambda t: t, lambda t: 2 * t, lambda t: t * 0.0], 0.0, 1.0)
    with pytest.raises(NonAdmissibleError):
        frenet(line)


def test_csv_rows_match_columns(helix_frames):
    rows = list(frame_rows(helix_frames))
    assert len(rows) == len(helix_frames)
    assert all(len(r) == len(FRAME_CSV_COLUMNS) for r in rows)
    assert rows[0][FRAME_CSV_COLUMNS.index("kappa")] == pytest.approx(1.0, abs=1e-12)
