"""Ambient spaces: bilinear forms, (co)distances, vector products and motions.

Vectors are numpy arrays whose last axis has length 3, so every function here
accepts a single vector or a stack of them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, SingularParameterError, SpecError, UnsupportedSpaceError
from .gcnum import hyperbolic_rotation


class SpaceKind(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    ISOTROPIC = "isotropic"
    PSEUDO = "pseudo-isotropic"

    @classmethod
    def parse(cls, value) -> "SpaceKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        try:
            return _ALIASES[key]
        except KeyError:
            raise SpecError(f"unknown space {value!r}", space=value) from None

    @property
    def is_isotropic(self) -> bool:
        return self is not SpaceKind.EUCLIDEAN


_ALIASES = {
    "euclidean": SpaceKind.EUCLIDEAN, "e3": SpaceKind.EUCLIDEAN,
    "isotropic": SpaceKind.ISOTROPIC, "simply-isotropic": SpaceKind.ISOTROPIC,
    "i3": SpaceKind.ISOTROPIC,
    "pseudo-isotropic": SpaceKind.PSEUDO, "pseudo": SpaceKind.PSEUDO,
    "ip3": SpaceKind.PSEUDO,
}


class CausalClass(str, enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


# degenerate direction, identical in every chart
ISOTROPIC_DIRECTION = np.array([0.0, 0.0, 1.0])

_FORMS = {
    SpaceKind.EUCLIDEAN: np.array([1.0, 1.0, 1.0]),
    SpaceKind.ISOTROPIC: np.array([1.0, 1.0, 0.0]),
    SpaceKind.PSEUDO: np.array([1.0, -1.0, 0.0]),
}

_MINKOWSKI = np.array([1.0, -1.0, 1.0])


def inner(kind, u, v):
    """Bilinear form of the space: Euclidean dot, ``u1 v1 + u2 v2`` or ``u1 v1 - u2 v2``."""
    g = _FORMS[SpaceKind.parse(kind)]
    return np.sum(g * np.asarray(u, dtype=float) * np.asarray(v, dtype=float), axis=-1)


def minkowski_inner(u, v):
    """Lorentz-Minkowski product ``u1 v1 - u2 v2 + u3 v3``."""
    return np.sum(_MINKOWSKI * np.asarray(u, dtype=float) * np.asarray(v, dtype=float), axis=-1)


def top_view(u):
    u = np.array(u, dtype=float)
    u[..., 2] = 0.0
    return u


def norm(kind, u):
    """Length induced by the form; the pseudo-isotropic case uses ``sqrt(|<u,u>|)``."""
    return np.sqrt(np.abs(inner(kind, u, u)))


def distance(kind, a, b):
    return norm(kind, np.asarray(b, dtype=float) - np.asarray(a, dtype=float))


def codistance(kind, a, b):
    kind = SpaceKind.parse(kind)
    if kind is SpaceKind.EUCLIDEAN:
        raise UnsupportedSpaceError("codistance is defined only in isotropic spaces",
                                    space=kind.value)
    return np.abs(np.asarray(b, dtype=float)[..., 2] - np.asarray(a, dtype=float)[..., 2])


def cross_euclidean(u, v):
    return np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))


def cross_minkowski(u, v):
    """Lorentzian product: the Euclidean one with its second component negated."""
    w = np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    return w * _MINKOWSKI


def cross(kind, u, v):
    """``×_e`` for Euclidean and simply isotropic space, ``×_1`` for pseudo-isotropic space."""
    if SpaceKind.parse(kind) is SpaceKind.PSEUDO:
        return cross_minkowski(u, v)
    return cross_euclidean(u, v)


def causal_character(v, tol: float = 0.0) -> CausalClass:
    """Classify ``v`` by the sign of ``x**2 - y**2``; the zero vector counts as spacelike."""
    v = np.asarray(v, dtype=float)
    q = float(inner(SpaceKind.PSEUDO, v, v))
    if q > tol or not np.any(v):
        return CausalClass.SPACELIKE
    if q < -tol:
        return CausalClass.TIMELIKE
    return CausalClass.LIGHTLIKE


# top-view blocks of the four components of the isometry group of the Minkowski plane
_PSEUDO_COMPONENTS = {
    "++": np.diag([1.0, 1.0]),
    "+-": np.diag([-1.0, -1.0]),
    "-+": np.diag([-1.0, 1.0]),
    "--": np.diag([1.0, -1.0]),
}


@dataclass(frozen=True)
class IsoMotion:
    """Rigid motion of a simply or pseudo-isotropic space in parameter form.

    Top view is rotated (circular or hyperbolic angle ``phi``) and translated
    by ``(a, b)``; the height picks up ``c + c1*x + c2*y``.  ``component`` is
    only meaningful in pseudo-isotropic space and selects one of the four
    components of the isometry group of the Minkowski plane; ``"++"`` is the
    motion group proper.
    """

    kind: SpaceKind = SpaceKind.ISOTROPIC
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    phi: float = 0.0
    component: str = "++"

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceKind.parse(self.kind))
        if self.kind is SpaceKind.EUCLIDEAN:
            raise UnsupportedSpaceError("isotropic motions need an isotropic space kind",
                                        space=self.kind.value)
        if self.component not in _PSEUDO_COMPONENTS:
            raise InvalidInputError(f"unknown component {self.component!r}")
        if self.kind is SpaceKind.ISOTROPIC and self.component != "++":
            raise InvalidInputError("only pseudo-isotropic motions carry a component flag")

    def rotation(self) -> np.ndarray:
        if self.kind is SpaceKind.ISOTROPIC:
            c, s = math.cos(self.phi), math.sin(self.phi)
            return np.array([[c, -s], [s, c]])
        return _PSEUDO_COMPONENTS[self.component] @ hyperbolic_rotation(self.phi)

    def linear(self) -> np.ndarray:
        m = np.eye(3)
        m[:2, :2] = self.rotation()
        m[2, 0], m[2, 1] = self.c1, self.c2
        return m

    def matrix(self) -> np.ndarray:
        """4x4 affine matrix acting on ``(x, y, z, 1)``."""
        m = np.eye(4)
        m[:3, :3] = self.linear()
        m[:3, 3] = (self.a, self.b, self.c)
        return m

    @classmethod
    def from_matrix(cls, m, kind=SpaceKind.ISOTROPIC, component: str = "++") -> "IsoMotion":
        m = np.asarray(m, dtype=float)
        kind = SpaceKind.parse(kind)
        if kind is SpaceKind.ISOTROPIC:
            phi = math.atan2(m[1, 0], m[0, 0])
        else:
            block = _PSEUDO_COMPONENTS[component] @ m[:2, :2]
            phi = math.asinh(block[1, 0])
        return cls(kind, float(m[0, 3]), float(m[1, 3]), float(m[2, 3]),
                   float(m[2, 0]), float(m[2, 1]), phi, component)

    def __call__(self, points):
        return apply_motion(self, points)

    def __matmul__(self, other: "IsoMotion") -> "IsoMotion":
        """Composition: ``(self @ other)(P) == self(other(P))``."""
        if other.kind is not self.kind:
            raise InvalidInputError("cannot compose motions of different spaces")
        comp = self.component
        if self.kind is SpaceKind.PSEUDO:
            comp = _component_product(self.component, other.component)
        return IsoMotion.from_matrix(self.matrix() @ other.matrix(), self.kind, comp)

    def inverse(self) -> "IsoMotion":
        return IsoMotion.from_matrix(np.linalg.inv(self.matrix()), self.kind, self.component)

    def to_json(self) -> dict:
        data = {"kind": self.kind.value, "a": self.a, "b": self.b, "c": self.c,
                "c1": self.c1, "c2": self.c2, "phi": self.phi}
        if self.component != "++":
            data["component"] = self.component
        return data

    @classmethod
    def from_json(cls, data) -> "IsoMotion":
        try:
            return cls(data["kind"], float(data.get("a", 0.0)), float(data.get("b", 0.0)),
                       float(data.get("c", data.get("c0", 0.0))), float(data.get("c1", 0.0)),
                       float(data.get("c2", 0.0)), float(data.get("phi", 0.0)),
                       data.get("component", "++"))
        except KeyError as exc:
            raise SpecError(f"motion JSON is missing {exc}") from None


def _component_product(first: str, second: str) -> str:
    m = _PSEUDO_COMPONENTS[first] @ _PSEUDO_COMPONENTS[second]
    for key, value in _PSEUDO_COMPONENTS.items():
        if np.array_equal(value, m):
            return key
    raise AssertionError("component table is not closed")


def apply_motion(motion: IsoMotion, points):
    p = np.asarray(points, dtype=float)
    return p @ motion.linear().T + np.array([motion.a, motion.b, motion.c])


def apply_linear(motion: IsoMotion, vectors):
    """Action on tangent vectors (translations dropped)."""
    return np.asarray(vectors, dtype=float) @ motion.linear().T


def strubecker_motion(p: float, translations=(0.0, 0.0, 0.0), shears=(0.0, 0.0)) -> IsoMotion:
    """Convert a motion written in null coordinates ``X = x + y``, ``Y = x - y``.

    In those coordinates the motion reads ``X -> a + p X``, ``Y -> b + Y/p``,
    ``z -> c + c1 X + c2 Y + z``.  Negative ``p`` lands in the time-reversing
    component ``"+-"``, which is outside the motion group proper.
    """
    if p == 0:
        raise SingularParameterError("Strubecker scaling p must be non-zero", p=p)
    a_s, b_s, c = (float(v) for v in translations)
    c1_s, c2_s = (float(v) for v in shears)
    return IsoMotion(SpaceKind.PSEUDO, 0.5 * (a_s + b_s), 0.5 * (a_s - b_s), c,
                     c1_s + c2_s, c1_s - c2_s, math.log(abs(p)), "++" if p > 0 else "+-")


def to_null_coordinates(points):
    """``(x, y, z) -> (x + y, x - y, z)``; the pseudo-isotropic form becomes ``X*Y``."""
    p = np.asarray(points, dtype=float)
    return np.stack([p[..., 0] + p[..., 1], p[..., 0] - p[..., 1], p[..., 2]], axis=-1)


def null_metric(u, v):
    """Polarisation of ``dX dY`` in null coordinates."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return 0.5 * (u[..., 0] * v[..., 1] + u[..., 1] * v[..., 0])
