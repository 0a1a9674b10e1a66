import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isokit.errors import InvalidInputError, SingularParameterError, SpecError, UnsupportedSpaceError
from isokit.gcnum import hyperbolic_rotation, to_lightcone
from isokit.spaces import (CausalClass, IsoMotion, SpaceKind, apply_linear, causal_character,
                           codistance, cross, distance, inner, minkowski_inner, null_metric,
                           strubecker_motion, to_null_coordinates)

ISO, PSEUDO, EUC = SpaceKind.ISOTROPIC, SpaceKind.PSEUDO, SpaceKind.EUCLIDEAN
coord = st.floats(-10, 10, allow_nan=False)
vec = st.tuples(coord, coord, coord).map(np.array)
param = st.floats(-2, 2, allow_nan=False)


@st.composite
def motions(draw, kind=None, components=("++",)):
    kind = kind or draw(st.sampled_from([ISO, PSEUDO]))
    comp = draw(st.sampled_from(components)) if kind is PSEUDO else "++"
    return IsoMotion(kind, *(draw(param) for _ in range(6)), component=comp)


def test_parse_aliases():
    assert SpaceKind.parse("pseudo") is PSEUDO
    assert SpaceKind.parse("I3") is ISO
    assert SpaceKind.parse(" Euclidean ") is EUC
    with pytest.raises(SpecError):
        SpaceKind.parse("hyperbolic")


def test_forms():
    u, v = np.array([1.0, 2.0, 3.0]), np.array([4.0, 5.0, 6.0])
    assert inner(EUC, u, v) == 32.0
    assert inner(ISO, u, v) == 14.0
    assert inner(PSEUDO, u, v) == -6.0
    assert minkowski_inner(u, v) == 12.0


def test_codistance_only_in_isotropic_spaces():
    assert codistance(ISO, [1, 2, 3], [1, 2, -1]) == 4.0
    with pytest.raises(UnsupportedSpaceError):
        codistance(EUC, [0, 0, 0], [0, 0, 1])


@given(vec, vec)
def test_cross_products_orthogonality(u, v):
    w = cross(EUC, u, v)
    assert abs(np.dot(w, u)) <= 1e-9 * (1 + np.linalg.norm(u) ** 2 * np.linalg.norm(v))
    w1 = cross(PSEUDO, u, v)
    # the Lorentzian product is Minkowski-orthogonal to both factors
    tol = 1e-9 * (1 + np.linalg.norm(u) ** 2 * np.linalg.norm(v) + np.linalg.norm(v) ** 2 * np.linalg.norm(u))
    assert abs(minkowski_inner(w1, u)) <= tol and abs(minkowski_inner(w1, v)) <= tol
    np.testing.assert_array_equal(w1, w * np.array([1, -1, 1]))


def test_causal_character():
    assert causal_character([2, 1, 5]) is CausalClass.SPACELIKE
    assert causal_character([1, 2, 0]) is CausalClass.TIMELIKE
    assert causal_character([1, -1, 7]) is CausalClass.LIGHTLIKE
    assert causal_character([0, 0, 0]) is CausalClass.SPACELIKE
    assert causal_character([1, 1 + 1e-9, 0], tol=1e-6) is CausalClass.LIGHTLIKE


@given(motions(), vec, vec)
def test_motions_preserve_distance(m, a, b):
    kind = m.kind
    before, after = distance(kind, a, b), distance(kind, m(a), m(b))
    assert abs(before - after) <= 1e-10 * max(1.0, before, float(np.max(np.abs(m(a) - m(b)))) ** 2)


@given(motions(PSEUDO, ("++", "+-", "-+", "--")), vec)
def test_all_pseudo_components_preserve_form_and_causality(m, v):
    w = apply_linear(m, v)
    q, q2 = inner(PSEUDO, v, v), inner(PSEUDO, w, w)
    assert abs(q - q2) <= 1e-9 * max(1.0, float(np.dot(w, w)))
    if abs(q) > 1e-6 * max(1.0, float(np.dot(w, w))):
        assert causal_character(v) is causal_character(w)


@given(motions(), vec, coord)
def test_codistance_invariant_on_vertical_pairs(m, a, dz):
    b = a + np.array([0.0, 0.0, dz])
    assert abs(codistance(m.kind, m(a), m(b)) - abs(dz)) <= 1e-10 * max(1.0, abs(dz), *np.abs(m(a)))


@given(motions(), motions(), vec)
def test_composition_and_inverse(m1, m2, p):
    if m1.kind is not m2.kind:
        with pytest.raises(InvalidInputError):
            m1 @ m2
        return
    scale = max(1.0, float(np.max(np.abs(m1(m2(p))))))
    np.testing.assert_allclose((m1 @ m2)(p), m1(m2(p)), atol=1e-9 * scale * 100)
    np.testing.assert_allclose(m1.inverse()(m1(p)), p, atol=1e-8 * max(1.0, *np.abs(m1(p))) * 100)


def test_motion_matrix_roundtrip():
    m = IsoMotion(PSEUDO, 1.0, -2.0, 0.5, 0.3, -0.7, 0.9, "-+")
    back = IsoMotion.from_matrix(m.matrix(), PSEUDO, "-+")
    np.testing.assert_allclose(back.matrix(), m.matrix(), atol=1e-14)
    assert IsoMotion.from_json(m.to_json()) == m


def test_motion_validation():
    with pytest.raises(UnsupportedSpaceError):
        IsoMotion(EUC)
    with pytest.raises(InvalidInputError):
        IsoMotion(ISO, component="+-")
    with pytest.raises(InvalidInputError):
        IsoMotion(PSEUDO, component="x")


@given(st.floats(-3, 3, allow_nan=False))
def test_strubecker_matches_hyperbolic_rotation(phi):
    m = strubecker_motion(math.exp(phi))
    np.testing.assert_allclose(m.rotation(), hyperbolic_rotation(phi), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(to_lightcone(m.rotation()),
                               np.diag([math.exp(phi), math.exp(-phi)]), rtol=1e-12, atol=1e-12)


@given(st.floats(0.1, 10), st.tuples(param, param, param), st.tuples(param, param), vec)
def test_strubecker_action_in_null_coordinates(p, tr, sh, pt):
    img = to_null_coordinates(strubecker_motion(p, tr, sh)(pt))
    X, Y, z = to_null_coordinates(pt)
    want = [tr[0] + p * X, tr[1] + Y / p, tr[2] + sh[0] * X + sh[1] * Y + z]
    np.testing.assert_allclose(img, want, atol=1e-11 * max(1.0, *np.abs(want)))


def test_strubecker_negative_scale_and_zero():
    assert strubecker_motion(-2.0).component == "+-"
    with pytest.raises(SingularParameterError):
        strubecker_motion(0.0)


@given(vec, vec)
def test_null_metric_is_pseudo_form(u, v):
    lhs = null_metric(to_null_coordinates(u), to_null_coordinates(v))
    assert abs(lhs - inner(PSEUDO, u, v)) <= 1e-9 * (1 + np.dot(u, u) + np.dot(v, v))


def test_vectorised():
    pts = np.arange(12.0).reshape(4, 3)
    assert distance(ISO, pts, pts[::-1]).shape == (4,)
    assert inner(PSEUDO, pts, pts).shape == (4,)
