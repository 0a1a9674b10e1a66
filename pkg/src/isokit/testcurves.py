"""Analytic test curves with exact derivatives up to order four.

Derivatives are carried by truncated Taylor jets: a :class:`Jet` stores
``f, f', ..., f''''`` of a function of ``t`` and propagates them through
arithmetic (Leibniz) and elementary functions (Faa di Bruno).  This keeps
the frame and sphere checks free of finite-difference noise.
"""

from __future__ import annotations

import math

import numpy as np

from .curve import Curve, MAX_ORDER, admissibility
from .errors import IsokitError
from .spaces import SpaceKind

_ORDER = MAX_ORDER + 1
_BINOM = [[math.comb(n, k) for k in range(_ORDER)] for n in range(_ORDER)]


class Jet:
    __slots__ = ("d",)
    __array_priority__ = 100

    def __init__(self, d):
        self.d = [np.asarray(x, dtype=float) for x in d]

    @classmethod
    def variable(cls, t):
        t = np.asarray(t, dtype=float)
        one, zero = np.ones_like(t), np.zeros_like(t)
        return cls([t, one, zero, zero, zero])

    @classmethod
    def const(cls, c, like):
        zero = np.zeros_like(like.d[0])
        return cls([zero + c, zero, zero, zero, zero])

    def _lift(self, other):
        return other if isinstance(other, Jet) else Jet.const(other, self)

    def __add__(self, other):
        other = self._lift(other)
        return Jet([a + b for a, b in zip(self.d, other.d)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.d])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([a * other for a in self.d])
        a, b = self.d, other.d
        return Jet([sum(_BINOM[n][k] * a[k] * b[n - k] for k in range(n + 1))
                    for n in range(_ORDER)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1.0 / other)
        return self * other.apply(*_power_derivs(other.d[0], -1.0))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, a):
        if isinstance(a, int) and a >= 0:
            out = Jet.const(1.0, self)
            for _ in range(a):
                out = out * self
            return out
        return self.apply(*_power_derivs(self.d[0], float(a)))

    def apply(self, f0, f1, f2, f3, f4) -> "Jet":
        """Compose with an outer function given its derivatives at the inner value."""
        g0, g1, g2, g3, g4 = self.d
        return Jet([
            f0,
            f1 * g1,
            f2 * g1 ** 2 + f1 * g2,
            f3 * g1 ** 3 + 3 * f2 * g1 * g2 + f1 * g3,
            f4 * g1 ** 4 + 6 * f3 * g1 ** 2 * g2 + f2 * (3 * g2 ** 2 + 4 * g1 * g3) + f1 * g4,
        ])


def _power_derivs(x, a):
    return [x ** a, a * x ** (a - 1), a * (a - 1) * x ** (a - 2),
            a * (a - 1) * (a - 2) * x ** (a - 3), a * (a - 1) * (a - 2) * (a - 3) * x ** (a - 4)]


def sin(j: Jet) -> Jet:
    s, c = np.sin(j.d[0]), np.cos(j.d[0])
    return j.apply(s, c, -s, -c, s)


def cos(j: Jet) -> Jet:
    s, c = np.sin(j.d[0]), np.cos(j.d[0])
    return j.apply(c, -s, -c, s, c)


def sinh(j: Jet) -> Jet:
    s, c = np.sinh(j.d[0]), np.cosh(j.d[0])
    return j.apply(s, c, s, c, s)


def cosh(j: Jet) -> Jet:
    s, c = np.sinh(j.d[0]), np.cosh(j.d[0])
    return j.apply(c, s, c, s, c)


def exp(j: Jet) -> Jet:
    e = np.exp(j.d[0])
    return j.apply(e, e, e, e, e)


def sqrt(j: Jet) -> Jet:
    return j ** 0.5


def _lift_component(f, t):
    out = f(t)
    return out if isinstance(out, Jet) else Jet.const(out, t)


def jet_curve(kind, components, t_min, t_max, samples=2000, name=None) -> Curve:
    """Curve whose components are functions ``Jet -> Jet``; derivatives are exact."""
    fx, fy, fz = components

    def jets(t):
        tj = Jet.variable(np.atleast_1d(np.asarray(t, dtype=float)))
        return [_lift_component(f, tj) for f in (fx, fy, fz)]

    def reshape(t, arr):
        return arr.reshape(np.shape(t) + (3,))

    def position(t):
        return reshape(t, np.stack([j.d[0] for j in jets(t)], axis=-1))

    def derivatives(t, k):
        return reshape(t, np.stack([j.d[k] for j in jets(t)], axis=-1))

    return Curve(kind, position, t_min, t_max, samples=samples, derivatives=derivatives,
                 name=name)


# named curves

def helix(kind="isotropic", samples=2000, t_max=2 * math.pi):
    return jet_curve(kind, (cos, sin, lambda t: t), 0.0, t_max, samples, "helix")


def planar_circle(kind="isotropic", samples=2000, radius=1.0):
    return jet_curve(kind, (lambda t: radius * cos(t), lambda t: radius * sin(t), lambda t: 0.0),
                     0.0, 2 * math.pi, samples, "planar-circle")


def hyperbolic_helix(samples=2000, t_min=-1.5, t_max=1.5):
    return jet_curve("pseudo-isotropic", (sinh, cosh, lambda t: t), t_min, t_max, samples,
                     "hyperbolic-helix")


def euclidean_helix(a=1.0, b=1.0, samples=2000, t_max=8.0):
    c = math.hypot(a, b)
    return jet_curve("euclidean", (lambda t: a * cos(t / c), lambda t: a * sin(t / c),
                                   lambda t: b * t / c), 0.0, t_max, samples, "euclidean-helix")


def _bump(z_scale=0.2):
    return lambda t: 0.6 * t + z_scale * sin(2 * t)


def cylindrical_curve(kind, r, sign=1, samples=2000, z=None):
    """Curve on ``x**2 +- y**2 = sign r**2``; its top view has constant curvature ``1/r``."""
    kind = SpaceKind.parse(kind)
    z = z or _bump()
    if kind is SpaceKind.ISOTROPIC:
        return jet_curve(kind, (lambda t: r * cos(t / r), lambda t: r * sin(t / r),
                                lambda t: z(t / r)), 0.0, 2 * math.pi * r, samples,
                         f"cylindrical-r{r:g}")
    if sign > 0:
        comps = (lambda t: r * cosh(t / r), lambda t: r * sinh(t / r), lambda t: z(t / r))
    else:
        comps = (lambda t: r * sinh(t / r), lambda t: r * cosh(t / r), lambda t: z(t / r))
    return jet_curve(kind, comps, -1.2 * r, 1.2 * r, samples, f"cylindrical-r{r:g}")


def parabolic_curve(kind, p, samples=2000, wobble=0.3):
    """Curve on ``2 p z = x**2 +- y**2``, built from a polar-type top view."""
    kind = SpaceKind.parse(kind)
    if kind is SpaceKind.ISOTROPIC:
        def rho(t):
            return 1.0 + wobble * sin(t)
        comps = (lambda t: rho(t) * cos(t), lambda t: rho(t) * sin(t),
                 lambda t: rho(t) ** 2 * (0.5 / p))
        return jet_curve(kind, comps, 0.0, 2 * math.pi, samples, f"parabolic-p{p:g}")

    def rho(t):
        return 1.0 + wobble * sin(t)
    comps = (lambda t: rho(t) * sinh(t), lambda t: rho(t) * cosh(t),
             lambda t: -(rho(t) ** 2) * (0.5 / p))
    return jet_curve(kind, comps, -1.2, 1.2, samples, f"parabolic-p{p:g}")


def plane_curve(kind, samples=2000, plane=(0.4, -0.3, 0.5)):
    """Admissible curve in the plane ``z = a x + b y + c``."""
    kind = SpaceKind.parse(kind)
    a, b, c = plane
    if kind is SpaceKind.PSEUDO:
        x = lambda t: 1.3 * sinh(t) + 0.1 * t  # noqa: E731
        y = lambda t: cosh(t)  # noqa: E731
        lo, hi = -1.2, 1.2
    else:
        x = lambda t: 1.5 * cos(t)  # noqa: E731
        y = lambda t: sin(t) + 0.1 * sin(2 * t)  # noqa: E731
        lo, hi = 0.0, 2 * math.pi
    return jet_curve(kind, (x, y, lambda t: a * x(t) + b * y(t) + c), lo, hi, samples,
                     "plane-curve")


def perturbed(curve_factory, amplitude=0.05, freq=7.0):
    """Add ``amplitude*sin(freq*t)`` to the height of a curve built by :func:`jet_curve`."""
    def factory(*args, **kwargs):
        base = curve_factory(*args, **kwargs)
        pos, der = base._position, base._derivatives

        def position(t):
            p = np.array(pos(t))
            p[..., 2] += amplitude * np.sin(freq * np.asarray(t))
            return p

        def derivatives(t, k):
            d = np.array(der(t, k))
            d[..., 2] += amplitude * freq ** k * np.sin(freq * np.asarray(t) + k * math.pi / 2)
            return d

        return base.with_options(position=position, derivatives=derivatives,
                                 name=f"perturbed-{base.name}")
    return factory


def spherical_spiral(samples=2000, radius=1.0, center=(0.0, 0.0, 0.0)):
    """Euclidean curve on a round sphere: polar angle oscillates while the azimuth turns."""
    cx, cy, cz = center

    def phi(t):
        return 1.0 + 0.4 * sin(2 * t)
    comps = (lambda t: radius * sin(phi(t)) * cos(t) + cx,
             lambda t: radius * sin(phi(t)) * sin(t) + cy,
             lambda t: radius * cos(phi(t)) + cz)
    return jet_curve("euclidean", comps, 0.0, 2 * math.pi, samples, "spherical-spiral")


def euclidean_plane_curve(samples=2000):
    """Ellipse in a tilted plane; torsion vanishes identically."""
    u = np.array([1.0, 0.0, 0.5]) / math.sqrt(1.25)
    v = np.array([0.0, 1.0, -0.2])
    v = v - (v @ u) * u
    v /= np.linalg.norm(v)
    comps = tuple((lambda t, i=i: 2.0 * u[i] * cos(t) + v[i] * sin(t)) for i in range(3))
    return jet_curve("euclidean", comps, 0.0, 2 * math.pi, samples, "euclidean-ellipse")


# random curves

def _random_terms(rng, n, amp):
    terms = []
    for _ in range(n):
        terms.append((rng.uniform(-amp, amp), int(rng.integers(0, 3)),
                      rng.choice(["sin", "cos"]), rng.uniform(0.5, 2.0), rng.uniform(0, 2 * math.pi)))
    return terms


def _terms_fn(terms, lead=None):
    funcs = {"sin": sin, "cos": cos}

    def f(t):
        out = lead(t) if lead is not None else Jet.const(0.0, t)
        for c, k, trig, w, ph in terms:
            out = out + c * (t ** k) * funcs[trig](w * t + ph)
        return out
    return f


def random_curve(kind, rng, samples=2000, margin=0.05, bound=5.0, attempts=100) -> Curve:
    """Admissible polynomial-times-trigonometric curve drawn from ``rng``.

    The top view is a perturbed ellipse (or hyperbola, kept away from the
    light cone, in pseudo-isotropic space).  Draws that come close to an
    inflection, or whose unit-speed curvature or torsion exceed ``bound``,
    are rejected so that absolute tolerances compare like with like.
    """
    kind = SpaceKind.parse(kind)
    for _ in range(attempts):
        a = rng.uniform(0.8, 1.5)
        tx, ty = _random_terms(rng, 2, 0.04), _random_terms(rng, 2, 0.04)
        tz = _random_terms(rng, 3, 0.5)
        h = rng.uniform(0.3, 1.0)
        if kind is SpaceKind.PSEUDO:
            b = a * rng.uniform(0.2, 0.7)
            # spacelike: (a sinh, b cosh); timelike: (b cosh, a sinh)
            if rng.integers(0, 2):
                x = _terms_fn(tx, lambda t: a * sinh(t))
                y = _terms_fn(ty, lambda t: b * cosh(t))
            else:
                x = _terms_fn(tx, lambda t: b * cosh(t))
                y = _terms_fn(ty, lambda t: a * sinh(t))
            lo, hi = -1.0, 1.0
        else:
            b = rng.uniform(0.8, 1.5)
            x = _terms_fn(tx, lambda t: a * cos(t))
            y = _terms_fn(ty, lambda t: b * sin(t))
            lo, hi = 0.0, 2.0
        z = _terms_fn(tz, lambda t: h * t)
        curve = jet_curve(kind, (x, y, z), lo, hi, samples, "random")
        if _well_conditioned(curve, margin, bound):
            return curve
    raise RuntimeError("could not draw an admissible curve; increase attempts")


def _well_conditioned(curve: Curve, margin: float, bound: float) -> bool:
    from .frames import frenet

    rep = admissibility(curve, tol=margin, n=400)
    if not rep.admissible:
        return False
    try:
        f = frenet(curve.with_options(samples=400))
    except IsokitError:
        return False
    return bool(np.max(np.abs(f.kappa)) <= bound and np.max(np.abs(f.tau)) <= bound)


__all__ = ["Jet", "sin", "cos", "sinh", "cosh", "exp", "sqrt", "jet_curve", "helix",
           "planar_circle", "hyperbolic_helix", "euclidean_helix", "cylindrical_curve",
           "parabolic_curve", "plane_curve", "perturbed", "spherical_spiral",
           "euclidean_plane_curve", "random_curve"]
