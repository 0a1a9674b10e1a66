import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isokit.curve import admissibility
from isokit.selftest import run_check
from isokit.spaces import SpaceKind
from isokit.spheres import Sphere
from isokit.testcurves import (Jet, cos, cosh, cylindrical_curve, exp, parabolic_curve,
                               random_curve, sin, sinh, sqrt)

x_values = st.floats(0.2, 1.5)


@given(x_values)
def test_jet_rules_against_closed_forms(x):
    t = Jet.variable(x)
    f = sin(t) * exp(t)
    # d^k/dt^k e^t sin t = 2^(k/2) e^t sin(t + k pi/4)
    for k in range(5):
        assert float(f.d[k]) == pytest.approx(2 ** (k / 2) * math.exp(x) * math.sin(x + k * math.pi / 4),
                                             rel=1e-12, abs=1e-12)
    g = sqrt(t)
    assert float(g.d[4]) == pytest.approx(-15 / 16 * x ** -3.5, rel=1e-12)
    q = 1 / t
    assert float(q.d[3]) == pytest.approx(-6 / x ** 4, rel=1e-12)
    h = cosh(t) * cosh(t) - sinh(t) * sinh(t)
    assert all(abs(float(h.d[k]) - (k == 0)) < 1e-12 for k in range(5))


@given(x_values)
def test_jet_composition_against_finite_differences(x):
    def f(u):
        return cos(u * u + 0.3 * sin(u))
    jet = f(Jet.variable(x))
    h = 1e-3
    vals = [float(f(Jet.variable(x + k * h)).d[0]) for k in (-2, -1, 0, 1, 2)]
    fd2 = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)
    assert float(jet.d[2]) == pytest.approx(fd2, abs=1e-6)


@pytest.mark.parametrize("kind", ["isotropic", "pseudo-isotropic"])
def test_constructed_curves_lie_on_their_spheres(kind):
    c = parabolic_curve(kind, 0.5)
    assert Sphere.parabolic(kind, 0.5).contains(c(c.grid()), 1e-12).all()
    d = cylindrical_curve(kind, 2.0)
    assert Sphere.cylindrical(kind, 2.0).contains(d(d.grid()), 1e-11).all()


@settings(max_examples=5)
@given(seed=st.integers(0, 2 ** 32 - 1), kind=st.sampled_from(list(SpaceKind)))
def test_random_curves_are_admissible(seed, kind):
    c = random_curve(kind, np.random.default_rng(seed), samples=300)
    assert admissibility(c).admissible


@settings(max_examples=4)
@given(seed=st.integers(0, 10_000), number=st.sampled_from([1, 2, 4, 8]))
def test_quick_selftest_passes_for_any_seed(seed, number):
    r = run_check(number, seed=seed, quick=True)
    assert r.passed, r.detail
