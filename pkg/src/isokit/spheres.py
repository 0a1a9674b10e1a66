"""Isotropic and pseudo-isotropic spheres, osculating spheres and the spherical image.

A sphere of either isotropic space is a quadric

    x**2 + sigma*y**2 + 2 c1 x + 2 c2 y + 2 c3 z + c4 = 0,   sigma = +1 or -1,

which is of parabolic type when ``c3 != 0`` and of cylindrical type otherwise.
Osculating spheres are written as ``lam <x-a0, x-a0> + <u, x-a0> = 0`` with the
space's degenerate form in the first term and the Euclidean (simply isotropic)
or Lorentz-Minkowski (pseudo-isotropic) product in the second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSphereError, InvalidInputError, SpecError, UnsupportedSpaceError
from .frames import FrameSet
from .spaces import IsoMotion, SpaceKind, inner, minkowski_inner

DEGENERACY_THRESHOLD = 1e-8
FORMS = ("parabolic", "cylindrical", "general")


def _sigma(kind: SpaceKind) -> float:
    return -1.0 if kind is SpaceKind.PSEUDO else 1.0


@dataclass(frozen=True)
class Sphere:
    """Sphere in one of three presentations.

    * ``parabolic``:   ``x**2 + sigma y**2 = 2 p z``
    * ``cylindrical``: ``(x-a)**2 + sigma (y-b)**2 = sign * r**2`` with ``center = (a, b)``
    * ``general``:     coefficients ``(c1, c2, c3, c4)``

    ``sign`` is always +1 in simply isotropic space.
    """

    kind: SpaceKind
    form: str
    p: float | None = None
    r: float | None = None
    sign: int = 1
    center: tuple = (0.0, 0.0)
    coeffs: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceKind.parse(self.kind))
        if self.kind is SpaceKind.EUCLIDEAN:
            raise UnsupportedSpaceError("isotropic spheres need an isotropic space kind",
                                        space=self.kind.value)
        if self.form not in FORMS:
            raise InvalidInputError(f"unknown sphere form {self.form!r}")
        if self.form == "parabolic" and (self.p is None or self.p == 0):
            raise InvalidInputError("parabolic sphere needs p != 0", p=self.p)
        if self.form == "cylindrical":
            if self.r is None or not self.r > 0:
                raise InvalidInputError("cylindrical sphere needs r > 0", r=self.r)
            if self.sign not in (1, -1) or (self.kind is SpaceKind.ISOTROPIC and self.sign != 1):
                raise InvalidInputError("sign must be +1 (or -1 in pseudo-isotropic space)",
                                        sign=self.sign)
        if self.form == "general" and (self.coeffs is None or len(self.coeffs) != 4):
            raise InvalidInputError("general sphere needs four coefficients")
        object.__setattr__(self, "center", tuple(float(v) for v in self.center))
        if self.coeffs is not None:
            object.__setattr__(self, "coeffs", tuple(float(v) for v in self.coeffs))

    @classmethod
    def parabolic(cls, kind, p: float) -> "Sphere":
        return cls(kind, "parabolic", p=float(p))

    @classmethod
    def cylindrical(cls, kind, r: float, sign: int = 1, center=(0.0, 0.0)) -> "Sphere":
        return cls(kind, "cylindrical", r=float(r), sign=int(sign), center=center)

    @classmethod
    def general(cls, kind, c1, c2, c3, c4) -> "Sphere":
        return cls(kind, "general", coeffs=(c1, c2, c3, c4))

    def to_general(self) -> "Sphere":
        if self.form == "general":
            return self
        sigma = _sigma(self.kind)
        if self.form == "parabolic":
            return Sphere.general(self.kind, 0.0, 0.0, -self.p, 0.0)
        a, b = self.center
        return Sphere.general(self.kind, -a, -sigma * b, 0.0,
                              a * a + sigma * b * b - self.sign * self.r ** 2)

    def defining_function(self, points):
        """Polynomial with leading term ``x**2 + sigma y**2``; zero exactly on the sphere."""
        c1, c2, c3, c4 = self.to_general().coeffs
        p = np.asarray(points, dtype=float)
        x, y, z = p[..., 0], p[..., 1], p[..., 2]
        return x * x + _sigma(self.kind) * y * y + 2 * c1 * x + 2 * c2 * y + 2 * c3 * z + c4

    def contains(self, points, tol: float = 1e-9):
        return np.abs(self.defining_function(points)) <= tol

    def quadric(self) -> np.ndarray:
        """Symmetric 4x4 matrix ``Q`` with ``F(P) = [P,1]^T Q [P,1]``."""
        c1, c2, c3, c4 = self.to_general().coeffs
        return np.array([[1.0, 0.0, 0.0, c1],
                         [0.0, _sigma(self.kind), 0.0, c2],
                         [0.0, 0.0, 0.0, c3],
                         [c1, c2, c3, c4]])

    @classmethod
    def from_quadric(cls, kind, q) -> "Sphere":
        q = np.asarray(q, dtype=float)
        q = 0.5 * (q + q.T)
        lead = q[0, 0]
        sigma = _sigma(SpaceKind.parse(kind))
        off = max(abs(q[0, 1]), abs(q[0, 2]), abs(q[1, 2]), abs(q[2, 2]),
                  abs(q[1, 1] - sigma * lead))
        if lead == 0 or off > 1e-9 * max(1.0, abs(lead)):
            raise InvalidInputError("quadric is not a sphere of this space")
        q = q / lead
        return cls.general(kind, q[0, 3], q[1, 3], q[2, 3], q[3, 3])

    def transformed(self, motion: IsoMotion) -> "Sphere":
        """Image of the sphere under a motion, in general form."""
        if motion.kind is not self.kind:
            raise InvalidInputError("motion and sphere live in different spaces")
        minv = np.linalg.inv(motion.matrix())
        return Sphere.from_quadric(self.kind, minv.T @ self.quadric() @ minv)

    def reduce(self, tol: float = 1e-12):
        """Normal form plus the motion taking this sphere onto it.

        Completing the square in ``x`` and ``y`` is all that is needed: the
        translation ``(c1, sigma c2)`` centres the top view and a vertical
        shift removes the constant of a parabolic sphere.
        """
        c1, c2, c3, c4 = self.to_general().coeffs
        sigma = _sigma(self.kind)
        rest = c4 - c1 * c1 - sigma * c2 * c2
        if abs(c3) > tol:
            motion = IsoMotion(self.kind, c1, sigma * c2, rest / (2 * c3))
            return Sphere.parabolic(self.kind, -c3), motion
        if abs(rest) <= tol:
            raise InvalidInputError("sphere degenerates to an isotropic line or a pair of planes",
                                    coeffs=[c1, c2, c3, c4])
        if self.kind is SpaceKind.ISOTROPIC and rest > 0:
            raise InvalidInputError("cylinder has imaginary radius", coeffs=[c1, c2, c3, c4])
        motion = IsoMotion(self.kind, c1, sigma * c2, 0.0)
        sign = 1 if rest < 0 else -1
        return Sphere.cylindrical(self.kind, math.sqrt(abs(rest)), sign), motion

    @property
    def type(self) -> str:
        """``parabolic`` or ``cylindrical`` regardless of presentation."""
        if self.form != "general":
            return self.form
        return "parabolic" if self.coeffs[2] != 0 else "cylindrical"

    def invariant(self) -> float:
        """``p`` of a parabolic sphere or ``r`` of a cylindrical one."""
        normal, _ = self.reduce()
        return normal.p if normal.form == "parabolic" else normal.r

    def to_json(self) -> dict:
        data = {"space": self.kind.value, "form": self.form}
        if self.form == "parabolic":
            data["p"] = self.p
        elif self.form == "cylindrical":
            data.update(r=self.r, sign=self.sign, center=list(self.center))
        else:
            data.update(zip(("c1", "c2", "c3", "c4"), self.coeffs))
        return data

    @classmethod
    def from_json(cls, data) -> "Sphere":
        try:
            kind, form = data["space"], data["form"]
            if form == "parabolic":
                return cls.parabolic(kind, data["p"])
            if form == "cylindrical":
                return cls.cylindrical(kind, data["r"], data.get("sign", 1),
                                       data.get("center", (0.0, 0.0)))
            if form == "general":
                return cls.general(kind, data["c1"], data["c2"], data["c3"], data["c4"])
        except KeyError as exc:
            raise SpecError(f"sphere JSON is missing {exc}") from None
        raise SpecError(f"unknown sphere form {form!r}")


# osculating spheres

def _u_metric(kind: SpaceKind) -> np.ndarray:
    return np.array([1.0, -1.0, 1.0]) if kind is SpaceKind.PSEUDO else np.ones(3)


def gauge(lam: float, u) -> tuple[float, np.ndarray]:
    """Fix the free scale: unit Euclidean ``u`` and ``lam >= 0``."""
    u = np.asarray(u, dtype=float)
    scale = float(np.linalg.norm(u))
    if scale == 0.0:
        raise DegenerateSphereError("u vanishes; no sphere")
    lam, u = lam / scale, u / scale
    flip = lam < 0 or (lam == 0 and u[np.flatnonzero(u)[0]] < 0)
    return (-lam, -u) if flip else (lam, u)


def contact_matrix(kind, d1, d2, d3) -> np.ndarray:
    """Rows of the contact conditions ``F' = F'' = F''' = 0`` in the unknowns ``(lam, u)``.

    Valid in any regular parametrization: ``d1..d3`` are plain derivatives.
    """
    kind = SpaceKind.parse(kind)
    g = _u_metric(kind)
    d1, d2, d3 = (np.asarray(v, dtype=float) for v in (d1, d2, d3))
    return np.array([
        [0.0, *(g * d1)],
        [2.0 * inner(kind, d1, d1), *(g * d2)],
        [6.0 * inner(kind, d1, d2), *(g * d3)],
    ])


def contact_solve(kind, d1, d2, d3) -> tuple[float, np.ndarray]:
    """``(lam, u)`` spanning the null space of the contact system (gauged)."""
    m = contact_matrix(kind, d1, d2, d3)
    m = m / np.linalg.norm(m, axis=1, keepdims=True)
    _, _, vt = np.linalg.svd(m)
    v = vt[-1]
    return gauge(v[0], v[1:])


def contact_residuals(kind, lam, u, d1, d2, d3) -> np.ndarray:
    return contact_matrix(kind, d1, d2, d3) @ np.concatenate([[lam], u])


def collinearity(a, b) -> float:
    """Sine of the angle between two vectors, up to sign."""
    a = np.asarray(a, dtype=float) / np.linalg.norm(a)
    b = np.asarray(b, dtype=float) / np.linalg.norm(b)
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


def coefficients_from(kind, lam, u, base) -> tuple:
    """General-form coefficients of ``lam <x-a0,x-a0> + <u,x-a0> = 0``."""
    kind = SpaceKind.parse(kind)
    if lam == 0:
        raise DegenerateSphereError("lam = 0: the osculating sphere is a plane")
    a0 = np.asarray(base, dtype=float)
    if kind is SpaceKind.ISOTROPIC:
        c1 = -a0[0] + u[0] / (2 * lam)
        c2 = -a0[1] + u[1] / (2 * lam)
        c4 = a0[0] ** 2 + a0[1] ** 2 - float(u @ a0) / lam
    else:
        c1 = -a0[0] + u[0] / (2 * lam)
        c2 = a0[1] - u[1] / (2 * lam)
        c4 = a0[0] ** 2 - a0[1] ** 2 - float(minkowski_inner(u, a0)) / lam
    return (float(c1), float(c2), float(u[2] / (2 * lam)), float(c4))


@dataclass(frozen=True)
class OsculatingSphere:
    kind: SpaceKind
    s: float
    base: np.ndarray
    lam: float
    u: np.ndarray
    generic_lam: float
    generic_u: np.ndarray
    collinearity: float
    residuals: np.ndarray
    tau_kappa2: float
    a1: float | None = None
    a2: float | None = None
    beta: tuple | None = None
    beta_residual: float | None = None
    center: np.ndarray | None = None
    radius: float | None = None
    coeffs: tuple | None = field(default=None)

    def sphere(self) -> Sphere:
        if self.kind is SpaceKind.EUCLIDEAN:
            raise UnsupportedSpaceError("Euclidean osculating spheres are round; use center/radius")
        return Sphere.general(self.kind, *self.coeffs)

    def to_json(self) -> dict:
        data = {"space": self.kind.value, "s": self.s, "base": self.base.tolist(),
                "lambda": self.lam, "u": self.u.tolist(),
                "generic": {"lambda": self.generic_lam, "u": self.generic_u.tolist()},
                "collinearity": self.collinearity, "contact_residuals": self.residuals.tolist(),
                "tau_kappa2": self.tau_kappa2,
                "gauge": "unit Euclidean norm of u, lambda >= 0"}
        if self.kind is SpaceKind.EUCLIDEAN:
            data.update(beta=list(self.beta), beta_residual=self.beta_residual,
                        center=self.center.tolist(), radius=self.radius)
        else:
            data.update(a1=self.a1, a2=self.a2, sphere=self.sphere().to_json())
        return data


def _check_frames(frames: FrameSet, i: int, kind: SpaceKind):
    if frames.kind is not kind:
        raise InvalidInputError(f"expected {kind.value} frames", space=frames.kind.value)
    if not frames.has_rm:
        raise InvalidInputError("osculating spheres need rotation-minimizing frames")
    tk2 = float(frames.tau[i] * frames.kappa[i] ** 2)
    if abs(tk2) < DEGENERACY_THRESHOLD:
        raise DegenerateSphereError("tau*kappa^2 vanishes: the osculating sphere degenerates "
                                    "to the osculating plane", s=float(frames.s[i]),
                                    tau_kappa2=tk2)
    return tk2


def _finish(kind, frames, i, lam, u, tk2, **extra) -> OsculatingSphere:
    lam, u = gauge(lam, u)
    glam, gu = contact_solve(kind, frames.raw1[i], frames.raw2[i], frames.raw3[i])
    res = contact_residuals(kind, lam, u, frames.d1[i], frames.d2[i], frames.d3[i])
    coeffs = None if kind is SpaceKind.EUCLIDEAN else coefficients_from(kind, lam, u,
                                                                        frames.point[i])
    return OsculatingSphere(kind, float(frames.s[i]), frames.point[i].copy(), float(lam), u,
                            float(glam), gu, collinearity(np.r_[lam, u], np.r_[glam, gu]),
                            res, tk2, coeffs=coeffs, **extra)


def osculating_sphere_isotropic(frames: FrameSet, i: int) -> OsculatingSphere:
    """Closed form ``u = k1' N2 - k2' N1``, ``2 lam = tau kappa**2`` (scale 1 before gauging)."""
    tk2 = _check_frames(frames, i, SpaceKind.ISOTROPIC)
    k1p, k2p = frames.kappa1_prime[i], frames.kappa2_prime[i]
    u = k1p * frames.N2[i] - k2p * frames.N1[i]
    return _finish(SpaceKind.ISOTROPIC, frames, i, 0.5 * tk2, u, tk2,
                   a1=float(-k2p / tk2), a2=float(k1p / tk2))


def osculating_sphere_pseudo(frames: FrameSet, i: int) -> OsculatingSphere:
    """Closed form ``u = eta k1' N2 - k2' N1`` and ``2 lam eps = tau kappa**2``."""
    tk2 = _check_frames(frames, i, SpaceKind.PSEUDO)
    eps, eta = frames.eps, frames.eta
    k1p, k2p = frames.kappa1_prime[i], frames.kappa2_prime[i]
    u = eta * k1p * frames.N2[i] - k2p * frames.N1[i]
    # line constants solving eps + a1 k1 + a2 k2 = 0 = a1 k1' + a2 k2'; k1 k2' - k1' k2 = eta tau kappa^2
    det = eta * tk2
    return _finish(SpaceKind.PSEUDO, frames, i, 0.5 * eps * tk2, u, tk2,
                   a1=float(-eps * k2p / det), a2=float(eps * k1p / det))


def osculating_sphere_euclidean(frames: FrameSet, i: int) -> OsculatingSphere:
    """Center ``a + b1 n1 + b2 n2`` with ``b1 = k2'/(tau kappa**2)``, ``b2 = -k1'/(tau kappa**2)``."""
    tk2 = _check_frames(frames, i, SpaceKind.EUCLIDEAN)
    k1, k2 = frames.kappa1[i], frames.kappa2[i]
    k1p, k2p = frames.kappa1_prime[i], frames.kappa2_prime[i]
    b1, b2 = k2p / tk2, -k1p / tk2
    beta_res = float(max(abs(k1 * b1 + k2 * b2 - 1.0), abs(k1p * b1 + k2p * b2)))
    offset = b1 * frames.n1[i] + b2 * frames.n2[i]
    return _finish(SpaceKind.EUCLIDEAN, frames, i, 1.0, -2.0 * offset, tk2,
                   beta=(0.0, float(b1), float(b2)), beta_residual=beta_res,
                   center=frames.point[i] + offset, radius=float(math.hypot(b1, b2)))


def osculating_sphere(frames: FrameSet, i: int) -> OsculatingSphere:
    return {SpaceKind.EUCLIDEAN: osculating_sphere_euclidean,
            SpaceKind.ISOTROPIC: osculating_sphere_isotropic,
            SpaceKind.PSEUDO: osculating_sphere_pseudo}[frames.kind](frames, i)


def osculating_spheres(frames: FrameSet, indices=None, skip_degenerate: bool = True):
    """Osculating spheres at the given sample indices (default: all)."""
    out = []
    for i in range(len(frames)) if indices is None else indices:
        try:
            out.append(osculating_sphere(frames, int(i)))
        except DegenerateSphereError:
            if not skip_degenerate:
                raise
    return out


# spherical image

UNIT_PARABOLIC_PSEUDO = Sphere.parabolic(SpaceKind.PSEUDO, 1.0)


@dataclass(frozen=True)
class SphericalImage:
    points: np.ndarray
    z_alt: np.ndarray
    agreement: float
    on_sphere: float
    bivector_residual: float

    def to_json(self) -> dict:
        return {"points": self.points.tolist(), "agreement": self.agreement,
                "on_sphere": self.on_sphere, "bivector_residual": self.bivector_residual}


def spherical_image(frames: FrameSet) -> SphericalImage:
    """Point of ``z = (x**2 - y**2)/2`` whose tangent plane is parallel to the osculating plane."""
    if frames.kind is not SpaceKind.PSEUDO:
        raise UnsupportedSpaceError("the spherical image is built for pseudo-isotropic curves",
                                    space=frames.kind.value)
    d1, d2 = frames.d1, frames.d2
    k, eps = frames.kappa, frames.eps
    xs = eps / k * (d1[:, 1] * d2[:, 2] - d2[:, 1] * d1[:, 2])
    ys = eps / k * (d1[:, 0] * d2[:, 2] - d2[:, 0] * d1[:, 2])
    zs = 0.5 * (xs * xs - ys * ys)
    z_alt = eps * (k * k * d1[:, 2] ** 2 - d2[:, 2] ** 2) / (2 * k * k)
    pts = np.stack([xs, ys, zs], axis=-1)
    on = float(np.max(np.abs(UNIT_PARABOLIC_PSEUDO.defining_function(pts))))
    bres = float("nan")
    if frames.B is not None:
        top = pts.copy()
        top[:, 2] = 0.0
        bres = float(np.max(np.linalg.norm(frames.B - (frames.b - top), axis=-1)))
    return SphericalImage(pts, z_alt, float(np.max(np.abs(zs - z_alt))), on, bres)


__all__ = ["Sphere", "OsculatingSphere", "SphericalImage", "gauge", "contact_matrix",
           "contact_solve", "contact_residuals", "collinearity", "coefficients_from",
           "osculating_sphere", "osculating_spheres", "osculating_sphere_isotropic",
           "osculating_sphere_pseudo", "osculating_sphere_euclidean", "spherical_image",
           "UNIT_PARABOLIC_PSEUDO", "DEGENERACY_THRESHOLD"]
