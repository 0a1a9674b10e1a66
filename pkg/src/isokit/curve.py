"""Parametric curves with derivative access, arc-length reparametrization and admissibility."""

from __future__ import annotations

import ast
import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator, make_interp_spline
from scipy.optimize import brentq, minimize_scalar

from .errors import InvalidInputError, SpecError, SpeedError
from .spaces import CausalClass, IsoMotion, SpaceKind, apply_linear, apply_motion

MAX_ORDER = 4

# ---------------------------------------------------------------------------
# finite differences


@lru_cache(maxsize=None)
def fd_weights(offsets: tuple, deriv: int) -> np.ndarray:
    """Fornberg weights for the ``deriv``-th derivative on integer ``offsets`` (unit step)."""
    x = [Fraction(o) for o in offsets]
    n = len(x)
    if deriv >= n:
        raise ValueError("stencil too small for the requested derivative")
    c = [[Fraction(0)] * (deriv + 1) for _ in range(n)]
    c[0][0] = Fraction(1)
    c1 = Fraction(1)
    for i in range(1, n):
        c2 = Fraction(1)
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            for k in range(min(i, deriv), -1, -1):
                prev_i = c[i - 1][k - 1] if k else Fraction(0)
                c[i][k] = c1 * (k * prev_i - x[i - 1] * c[i - 1][k]) / c2
            for k in range(min(i, deriv), -1, -1):
                prev_j = c[j][k - 1] if k else Fraction(0)
                c[j][k] = (x[i] * c[j][k] - k * prev_j) / c3
        c1 = c2
    return np.array([float(c[i][deriv]) for i in range(n)])


def central_offsets(deriv: int, order: int) -> tuple:
    half = (deriv + 1) // 2 - 1 + (order + 1) // 2
    return tuple(range(-half, half + 1))


def differentiate_samples(values, h: float, deriv: int = 1, order: int = 4) -> np.ndarray:
    """Derivative of uniformly sampled data along axis 0.

    Central stencils in the interior and one-sided stencils of the same width
    near the ends, so the accuracy is ``O(h**order)`` everywhere.
    """
    y = np.asarray(values, dtype=float)
    n = y.shape[0]
    offsets = central_offsets(deriv, order)
    width = len(offsets)
    if n < width:
        raise InvalidInputError("not enough samples for the finite-difference stencil",
                                samples=n, needed=width)
    half = width // 2
    out = np.empty_like(y)
    w = fd_weights(offsets, deriv)
    interior = slice(half, n - half)
    acc = np.zeros_like(y[interior])
    for k, o in enumerate(offsets):
        acc = acc + w[k] * y[half + o: n - half + o]
    out[interior] = acc
    for i in list(range(half)) + list(range(n - half, n)):
        start = min(max(i - half, 0), n - width)
        offs = tuple(range(start - i, start - i + width))
        wi = fd_weights(offs, deriv)
        out[i] = np.tensordot(wi, y[start:start + width], axes=(0, 0))
    return out / h ** deriv


# ---------------------------------------------------------------------------
# expression grammar

_FUNCS = {"sin": np.sin, "cos": np.cos, "sinh": np.sinh, "cosh": np.cosh,
          "exp": np.exp, "pow": np.power}
_CONSTS = {"pi": math.pi}
_BINOPS = {ast.Add: np.add, ast.Sub: np.subtract, ast.Mult: np.multiply,
           ast.Div: np.divide, ast.Pow: np.power}


def compile_expression(text: str):
    """Compile ``text`` into a vectorised function of ``t``.

    Grammar: numeric literals, ``t``, ``pi``, ``+ - * /`` (``**`` as a synonym
    of ``pow``), and calls to sin, cos, sinh, cosh, exp, pow.
    """
    try:
        tree = ast.parse(str(text), mode="eval")
    except SyntaxError as exc:
        raise SpecError(f"cannot parse expression {text!r}: {exc.msg}") from None

    def build(node):
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            value = float(node.value)
            return lambda t: np.full_like(t, value)
        if isinstance(node, ast.Name):
            if node.id == "t":
                return lambda t: t
            if node.id in _CONSTS:
                value = _CONSTS[node.id]
                return lambda t: np.full_like(t, value)
            raise SpecError(f"unknown name {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = build(node.operand)
            if isinstance(node.op, ast.USub):
                return lambda t: -inner(t)
            return inner
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            op = _BINOPS[type(node.op)]
            left, right = build(node.left), build(node.right)
            return lambda t: op(left(t), right(t))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and node.func.id in _FUNCS and not node.keywords:
            fn = _FUNCS[node.func.id]
            nargs = 2 if node.func.id == "pow" else 1
            if len(node.args) != nargs:
                raise SpecError(f"{node.func.id} takes {nargs} argument(s) in {text!r}")
            args = [build(a) for a in node.args]
            return lambda t: fn(*(a(t) for a in args))
        raise SpecError(f"unsupported syntax in expression {text!r}",
                        node=type(node).__name__)

    fn = build(tree)

    def evaluate(t):
        return fn(np.asarray(t, dtype=float))

    return evaluate


# ---------------------------------------------------------------------------
# curves


class Curve:
    """A parametric curve ``t -> (x, y, z)`` tagged with its ambient space.

    ``derivatives`` may be ``None`` (finite differences over ``position``),
    a callable ``(t, k) -> array`` or a sequence of callables for orders
    1..4.  All callables are vectorised over ``t`` and return arrays whose
    last axis has length 3.
    """

    def __init__(self, kind, position, t_min, t_max, samples=1000, derivatives=None,
                 fd_order=4, fd_step=None, richardson=False, name=None):
        self.kind = SpaceKind.parse(kind)
        self._position = position
        self.t_min = float(t_min)
        self.t_max = float(t_max)
        if not self.t_max > self.t_min:
            raise InvalidInputError("empty parameter domain", t_min=t_min, t_max=t_max)
        self.samples = int(samples)
        if self.samples < 10:
            raise InvalidInputError("need at least 10 samples", samples=samples)
        if derivatives is not None and not callable(derivatives):
            funcs = list(derivatives)
            if len(funcs) < MAX_ORDER:
                raise InvalidInputError("derivative callbacks must cover orders 1..4")
            derivatives = _sequence_derivative(funcs)
        self._derivatives = derivatives
        if fd_order not in (2, 4, 6, 8):
            raise InvalidInputError("finite-difference order must be 2, 4, 6 or 8",
                                    fd_order=fd_order)
        self.fd_order = int(fd_order)
        self.fd_step = float(fd_step) if fd_step else (self.t_max - self.t_min) * 1e-3
        self.richardson = bool(richardson)
        self.name = name

    @property
    def exact_derivatives(self) -> bool:
        return self._derivatives is not None

    def grid(self, n=None) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, n or self.samples)

    def __call__(self, t):
        return self.evaluate(t)

    def evaluate(self, t):
        return np.asarray(self._position(np.asarray(t, dtype=float)), dtype=float)

    def derivative(self, t, k: int):
        if k == 0:
            return self.evaluate(t)
        if not 1 <= k <= MAX_ORDER:
            raise InvalidInputError("derivative order must be between 0 and 4", order=k)
        t = np.asarray(t, dtype=float)
        if self._derivatives is not None:
            return np.asarray(self._derivatives(t, k), dtype=float)
        d = self._fd(t, k, self.fd_step)
        if self.richardson:
            d2 = self._fd(t, k, 0.5 * self.fd_step)
            r = 2.0 ** self.fd_order
            d = (r * d2 - d) / (r - 1.0)
        return d

    def derivatives(self, t, upto: int = MAX_ORDER):
        return [self.derivative(t, k) for k in range(1, upto + 1)]

    def _fd(self, t, k, h):
        offsets = central_offsets(k, self.fd_order)
        w = fd_weights(offsets, k)
        acc = 0.0
        for wi, o in zip(w, offsets):
            if wi != 0.0:
                acc = acc + wi * self.evaluate(t + o * h)
        return acc / h ** k

    def with_options(self, **changes) -> "Curve":
        opts = dict(kind=self.kind, position=self._position, t_min=self.t_min,
                    t_max=self.t_max, samples=self.samples, derivatives=self._derivatives,
                    fd_order=self.fd_order, fd_step=self.fd_step,
                    richardson=self.richardson, name=self.name)
        opts.update(changes)
        return Curve(**opts)

    def transformed(self, motion: IsoMotion) -> "Curve":
        """Image of the curve under a rigid motion of its space."""
        pos = self._position
        derivs = self._derivatives

        def position(t):
            return apply_motion(motion, pos(t))

        new_derivs = None
        if derivs is not None:
            def new_derivs(t, k):
                return apply_linear(motion, derivs(t, k))
        return self.with_options(position=position, derivatives=new_derivs)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_spec(cls, spec: dict, **overrides) -> "Curve":
        """Build a curve from the JSON spec ``{"space", "x", "y", "z", "t_min", "t_max", "samples"}``."""
        missing = [k for k in ("x", "y", "z", "t_min", "t_max") if k not in spec]
        if missing:
            raise SpecError(f"curve spec is missing {', '.join(missing)}")
        if "space" not in spec and "kind" not in overrides:
            raise SpecError("curve spec has no 'space' entry")
        comps = [compile_expression(spec[k]) for k in ("x", "y", "z")]

        def position(t):
            t = np.asarray(t, dtype=float)
            return np.stack([np.broadcast_to(c(t), t.shape) for c in comps], axis=-1)

        opts = dict(kind=spec.get("space"), t_min=_number(spec, "t_min"),
                    t_max=_number(spec, "t_max"), samples=int(spec.get("samples", 1000)),
                    name=spec.get("name"))
        opts.update({k: v for k, v in overrides.items() if v is not None})
        return cls(position=position, **opts)

    @classmethod
    def from_samples(cls, kind, t, points, samples=None, **kwargs) -> "Curve":
        """Quintic interpolating spline through sampled points (derivatives to order 4)."""
        t = np.asarray(t, dtype=float)
        points = np.asarray(points, dtype=float)
        if t.ndim != 1 or points.shape != (t.size, 3):
            raise InvalidInputError("sampled curve needs t of shape (n,) and points (n, 3)")
        if t.size < 10:
            raise InvalidInputError("need at least 10 sampled points", samples=t.size)
        if np.any(np.diff(t) <= 0):
            raise InvalidInputError("sample parameters must be strictly increasing")
        spline = make_interp_spline(t, points, k=5)
        derivs = [spline.derivative(k) for k in range(1, MAX_ORDER + 1)]
        return cls(kind, spline, t[0], t[-1], samples=samples or t.size,
                   derivatives=lambda tt, k: derivs[k - 1](tt), **kwargs)


def _sequence_derivative(funcs):
    def derivative(t, k):
        return funcs[k - 1](t)
    return derivative


def _number(spec, key):
    try:
        return float(spec[key])
    except (TypeError, ValueError):
        raise SpecError(f"{key} must be a number", value=spec[key]) from None


def load_curve(path, kind=None, samples=None, fd_order=None, fd_step=None) -> Curve:
    """Read a curve spec (.json) or sampled points (.csv with columns t,x,y,z)."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with path.open(newline="") as fh:
            rows = list(csv.DictReader(fh))
        try:
            data = np.array([[float(r[c]) for c in ("t", "x", "y", "z")] for r in rows])
        except (KeyError, ValueError) as exc:
            raise SpecError(f"CSV curve needs numeric columns t,x,y,z ({exc})") from None
        if kind is None:
            raise SpecError("CSV curves need an explicit space")
        return Curve.from_samples(kind, data[:, 0], data[:, 1:], samples=samples,
                                  fd_order=fd_order or 4, fd_step=fd_step, name=path.stem)
    try:
        spec = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON in {path}: {exc}") from None
    return curve_from_spec(spec, kind=kind, samples=samples, fd_order=fd_order,
                           fd_step=fd_step, default_name=path.stem)


def curve_from_spec(spec, kind=None, samples=None, fd_order=None, fd_step=None,
                    default_name=None) -> Curve:
    if not isinstance(spec, dict):
        raise SpecError("curve spec must be a JSON object")
    if kind is not None and "space" in spec:
        if SpaceKind.parse(kind) is not SpaceKind.parse(spec["space"]):
            raise SpecError("--space does not match the space declared in the spec",
                            spec_space=spec["space"], requested=str(SpaceKind.parse(kind).value))
    curve = Curve.from_spec(spec, kind=kind, samples=samples, fd_order=fd_order,
                            fd_step=fd_step)
    if curve.name is None:
        curve.name = default_name
    return curve


# ---------------------------------------------------------------------------
# speed and arc length


def squared_speed(kind, d1):
    """Signed quadratic form of the velocity in the space's (semi-)metric."""
    kind = SpaceKind.parse(kind)
    d1 = np.asarray(d1, dtype=float)
    if kind is SpaceKind.EUCLIDEAN:
        return np.sum(d1 * d1, axis=-1)
    if kind is SpaceKind.ISOTROPIC:
        return d1[..., 0] ** 2 + d1[..., 1] ** 2
    return d1[..., 0] ** 2 - d1[..., 1] ** 2


def speed(kind, d1):
    return np.sqrt(np.abs(squared_speed(kind, d1)))


def _form_product(kind, u, v):
    if kind is SpaceKind.EUCLIDEAN:
        return np.sum(u * v, axis=-1)
    if kind is SpaceKind.ISOTROPIC:
        return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1]
    return u[..., 0] * v[..., 0] - u[..., 1] * v[..., 1]


def unit_speed_derivatives(kind, d1, d2, d3, d4):
    """Derivatives with respect to arc length from derivatives in any regular parameter.

    With ``g = 1/speed`` the parameter map satisfies ``t' = g``, ``t'' = g_t g``,
    ``t''' = g_tt g**2 + g_t**2 g`` and
    ``t'''' = g_ttt g**3 + 4 g_tt g_t g**2 + g_t**3 g``; the curve derivatives
    follow from Faa di Bruno's formula.
    """
    kind = SpaceKind.parse(kind)
    q = squared_speed(kind, d1)
    sgn = np.where(q < 0, -1.0, 1.0)
    q = sgn * q
    q1 = 2.0 * sgn * _form_product(kind, d1, d2)
    q2 = 2.0 * sgn * (_form_product(kind, d2, d2) + _form_product(kind, d1, d3))
    q3 = 2.0 * sgn * (3.0 * _form_product(kind, d2, d3) + _form_product(kind, d1, d4))
    g = q ** -0.5
    g1 = -0.5 * q ** -1.5 * q1
    g2 = 0.75 * q ** -2.5 * q1 ** 2 - 0.5 * q ** -1.5 * q2
    g3 = (-1.875 * q ** -3.5 * q1 ** 3 + 2.25 * q ** -2.5 * q1 * q2
          - 0.5 * q ** -1.5 * q3)
    t1 = g
    t2 = g1 * g
    t3 = g2 * g ** 2 + g1 ** 2 * g
    t4 = g3 * g ** 3 + 4.0 * g2 * g1 * g ** 2 + g1 ** 3 * g
    t1, t2, t3, t4 = (x[..., None] for x in (t1, t2, t3, t4))
    a1 = d1 * t1
    a2 = d2 * t1 ** 2 + d1 * t2
    a3 = d3 * t1 ** 3 + 3.0 * d2 * t1 * t2 + d1 * t3
    a4 = (d4 * t1 ** 4 + 6.0 * d3 * t1 ** 2 * t2 + d2 * (3.0 * t2 ** 2 + 4.0 * t1 * t3)
          + d1 * t4)
    return a1, a2, a3, a4


_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


class ArclengthCurve(Curve):
    """Unit-speed reparametrization ``s -> base(t(s))`` on ``[0, length]``."""

    def __init__(self, base: Curve, knots, cumulative):
        self.base = base
        self._knots = knots
        self._cumulative = cumulative
        self.length = float(cumulative[-1])
        self._guess = PchipInterpolator(cumulative, knots)
        super().__init__(base.kind, self._position_s, 0.0, self.length,
                         samples=base.samples, derivatives=self._derivative_s,
                         fd_order=base.fd_order, name=base.name)

    def _partial_length(self, t, k):
        lo = self._knots[k]
        half = 0.5 * (t - lo)
        mid = 0.5 * (t + lo)
        nodes = mid[..., None] + half[..., None] * _GL_X
        v = speed(self.kind, self.base.derivative(nodes, 1))
        return half * (v @ _GL_W)

    def arclength_of(self, t):
        """Arc length from ``t_min`` to ``t``."""
        t = np.asarray(t, dtype=float)
        k = np.clip(np.searchsorted(self._knots, t, side="right") - 1, 0,
                    len(self._knots) - 2)
        return self._cumulative[k] + self._partial_length(t, k)

    def parameter_of(self, s):
        """Original parameter ``t`` at arc length ``s`` (monotone spline, then Newton)."""
        s = np.asarray(s, dtype=float)
        k = np.clip(np.searchsorted(self._cumulative, s, side="right") - 1, 0,
                    len(self._knots) - 2)
        t = np.clip(self._guess(s), self.base.t_min, self.base.t_max)
        for _ in range(6):
            resid = self._cumulative[k] + self._partial_length(t, k) - s
            v = speed(self.kind, self.base.derivative(t, 1))
            step = resid / v
            t = t - step
            if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(t))):
                break
        return t

    def _position_s(self, s):
        return self.base.evaluate(self.parameter_of(s))

    def _derivative_s(self, s, k):
        t = self.parameter_of(s)
        return unit_speed_derivatives(self.kind, *self.base.derivatives(t, 4))[k - 1]

    def derivatives(self, s, upto: int = MAX_ORDER):
        t = self.parameter_of(s)
        d = self.base.derivatives(t, 4)
        return list(unit_speed_derivatives(self.kind, *d)[:upto])


def arclength_reparametrize(curve: Curve, min_speed: float = 1e-8, knots: int | None = None):
    """Reparametrize ``curve`` by arc length in the (semi-)norm of its space.

    The arc-length table is built by composite Simpson quadrature; the inverse
    map uses a monotone cubic as the initial guess and Newton refinement.
    Raises :class:`SpeedError` where the speed drops below ``min_speed``.
    """
    if isinstance(curve, ArclengthCurve):
        return curve
    m = knots or max(curve.samples, 512)
    tk = np.linspace(curve.t_min, curve.t_max, m)
    mids = 0.5 * (tk[1:] + tk[:-1])
    vk = speed(curve.kind, curve.derivative(tk, 1))
    vm = speed(curve.kind, curve.derivative(mids, 1))
    both = np.concatenate([vk, vm])
    if not np.all(np.isfinite(both)) or both.min() < min_speed:
        where = np.concatenate([tk, mids])[np.nanargmin(np.where(np.isfinite(both), both, -1))]
        raise SpeedError("speed vanishes in the space's (semi-)norm",
                         t=float(where), min_speed=float(np.nanmin(both)), space=curve.kind.value)
    h = tk[1] - tk[0]
    cumulative = np.concatenate([[0.0], np.cumsum(h / 6.0 * (vk[:-1] + 4.0 * vm + vk[1:]))])
    return ArclengthCurve(curve, tk, cumulative)


# ---------------------------------------------------------------------------
# admissibility


@dataclass
class AdmissibilityReport:
    regular: bool
    inflection_points: list
    admissible: bool
    min_abs_det: float
    min_speed: float
    causal: CausalClass | None = None
    causal_constant: bool | None = None
    isotropic_plane_points: list = field(default_factory=list)
    reasons: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "regular": self.regular,
            "inflection_points": [float(t) for t in self.inflection_points],
            "admissible": self.admissible,
            "min_abs_det": float(self.min_abs_det),
            "min_speed": float(self.min_speed),
            "causal": self.causal.value if self.causal is not None else None,
            "causal_constant": self.causal_constant,
            "isotropic_plane_points": [float(t) for t in self.isotropic_plane_points],
            "reasons": list(self.reasons),
        }


def top_view_det(d1, d2):
    return d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]


def admissibility(curve: Curve, tol: float = 1e-6, n: int | None = None) -> AdmissibilityReport:
    """Diagnose regularity, inflections, isotropic osculating planes and causal character.

    ``min_abs_det`` is ``|x'y'' - x''y'|`` after unit-speed normalization in
    the isotropic spaces (the top-view curvature), and the Euclidean
    curvature for Euclidean curves.
    """
    kind = curve.kind
    t = curve.grid(max(n or curve.samples, 256))
    d1 = curve.derivative(t, 1)
    d2 = curve.derivative(t, 2)
    reasons = []

    euclid_speed = np.linalg.norm(d1, axis=-1)
    if kind is SpaceKind.PSEUDO:
        sp = euclid_speed
    else:
        sp = speed(kind, d1)
    min_speed = float(np.min(sp))
    regular = bool(min_speed > tol)
    if not regular:
        reasons.append(f"speed vanishes (min {min_speed:.3g}) near t={t[np.argmin(sp)]:.6g}")

    def curvature_e(tt):
        a, b = curve.derivative(tt, 1), curve.derivative(tt, 2)
        return np.linalg.norm(np.cross(a, b), axis=-1) / np.maximum(
            np.linalg.norm(a, axis=-1), 1e-300) ** 3

    inflections = []
    if regular or kind is SpaceKind.PSEUDO:
        g = curvature_e(t)
        for i in _local_minima(g):
            if g[i] <= tol:
                lo, hi = t[max(i - 1, 0)], t[min(i + 1, len(t) - 1)]
                if hi > lo:
                    res = minimize_scalar(lambda x: float(curvature_e(np.array(x))),
                                          bounds=(lo, hi), method="bounded",
                                          options={"xatol": 1e-12})
                    inflections.append(float(res.x))
                else:
                    inflections.append(float(t[i]))
    if inflections:
        reasons.append(f"{len(inflections)} inflection point(s)")

    causal = None
    causal_constant = None
    plane_points = []
    if kind is SpaceKind.EUCLIDEAN:
        with np.errstate(divide="ignore", invalid="ignore"):
            min_abs_det = float(np.min(curvature_e(t)))
    else:
        det = top_view_det(d1, d2)
        v = speed(kind, d1)
        with np.errstate(divide="ignore", invalid="ignore"):
            normalized = np.abs(det) / v ** 3
        normalized = np.where(np.isfinite(normalized), normalized, 0.0)
        min_abs_det = float(np.min(normalized))
        for i in np.nonzero(np.sign(det[:-1]) * np.sign(det[1:]) < 0)[0]:
            f = lambda x: float(top_view_det(curve.derivative(np.array(x), 1),
                                             curve.derivative(np.array(x), 2)))
            plane_points.append(float(brentq(f, t[i], t[i + 1], xtol=1e-14)))
        if min_abs_det <= tol or plane_points:
            # a sign change of the determinant is a zero even when no sample lands on it
            min_abs_det = 0.0 if plane_points else min_abs_det
            reasons.append("osculating plane becomes isotropic (x'y''-x''y' ~ 0)")

    if kind is SpaceKind.PSEUDO:
        q = squared_speed(kind, d1)
        top = np.maximum(np.sum(d1[..., :2] ** 2, axis=-1), 1e-300)
        rel = q / top
        classes = np.where(rel > tol, 1, np.where(rel < -tol, -1, 0))
        if np.all(classes == 1):
            causal = CausalClass.SPACELIKE
        elif np.all(classes == -1):
            causal = CausalClass.TIMELIKE
        elif np.all(classes == 0):
            causal = CausalClass.LIGHTLIKE
        else:
            counts = {c: int(np.sum(classes == c)) for c in (1, -1, 0)}
            causal = {1: CausalClass.SPACELIKE, -1: CausalClass.TIMELIKE,
                      0: CausalClass.LIGHTLIKE}[max(counts, key=counts.get)]
        causal_constant = bool(np.all(classes == classes[0]) and classes[0] != 0)
        if np.any(classes == 0):
            reasons.append("velocity on the light cone (lightlike)")
        elif not causal_constant:
            reasons.append("causal character changes along the curve")

    admissible = (regular and not inflections and min_abs_det > tol
                  and (causal_constant is None or causal_constant))
    return AdmissibilityReport(regular, inflections, bool(admissible), min_abs_det, min_speed,
                               causal, causal_constant, plane_points, reasons)


def _local_minima(g):
    """Indices of local minima; a flat run of minima yields its first index only."""
    padded = np.concatenate([[np.inf], g, [np.inf]])
    is_min = (padded[1:-1] <= padded[:-2]) & (padded[1:-1] <= padded[2:])
    idx = np.nonzero(is_min)[0]
    if idx.size == 0:
        return []
    keep = np.concatenate([[True], np.diff(idx) > 1])
    return [int(i) for i in idx[keep]]
