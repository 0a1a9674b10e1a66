"""Spherical and planar classification from the normal development.

The normal development of a curve is the planar curve ``s -> (k1(s), k2(s))``
of its rotation-minimizing curvatures.  It lies on a line through the origin
for plane curves and on a line missing the origin for spherical curves; in
the two isotropic spaces a spherical curve with constant curvature lies on a
cylindrical sphere of radius ``1/|kappa|`` and otherwise on a parabolic one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .curve import Curve, differentiate_samples
from .errors import InsufficientDataError
from .frames import FrameSet, rm_frames
from .spaces import SpaceKind
from .spheres import DEGENERACY_THRESHOLD, osculating_spheres

MIN_SAMPLES = 10


class Verdict(str, enum.Enum):
    PLANE = "PlaneCurve"
    SPHERICAL_PARABOLIC = "SphericalParabolic"
    SPHERICAL_CYLINDRICAL = "SphericalCylindrical"
    SPHERICAL = "Spherical"  # Euclidean round spheres
    GENERIC = "Generic"

    @property
    def spherical(self) -> bool:
        return self in (Verdict.SPHERICAL, Verdict.SPHERICAL_PARABOLIC,
                        Verdict.SPHERICAL_CYLINDRICAL)


@dataclass(frozen=True)
class NormalDevelopment:
    kind: SpaceKind
    s: np.ndarray
    points: np.ndarray
    line: tuple
    rms_residual: float
    max_residual: float
    origin_distance: float
    verdict: Verdict
    kappa_constant: bool
    tol: float
    origin_tol: float
    scale: float
    eps: int = 1
    radius: float | None = None
    degenerate_point: bool = False
    planar: bool = False
    cylindrical: bool = False

    def to_json(self) -> dict:
        a1, a2, c = self.line
        return {"space": self.kind.value, "verdict": self.verdict.value,
                "line": {"a1": a1, "a2": a2, "c": c},
                "rms_residual": self.rms_residual, "max_residual": self.max_residual,
                "origin_distance": self.origin_distance, "kappa_constant": self.kappa_constant,
                "radius": self.radius, "tol": self.tol, "origin_tol": self.origin_tol,
                "scale": self.scale, "eps": self.eps, "samples": int(len(self.s)),
                "degenerate_point": self.degenerate_point,
                "flags": {"planar": self.planar, "cylindrical": self.cylindrical}}

    def rows(self):
        for s, (k1, k2) in zip(self.s, self.points):
            yield [s, k1, k2]


def tls_line(points):
    """Orthogonal-regression line ``a . p = c`` with ``|a| = 1`` and ``c >= 0``.

    Returns ``(a, c, residuals, spread)`` where ``spread`` is the RMS extent
    of the points along the line.
    """
    p = np.asarray(points, dtype=float)
    m = p.mean(axis=0)
    _, sv, vt = np.linalg.svd(p - m, full_matrices=False)
    a = vt[-1]
    c = float(a @ m)
    if c < 0:
        a, c = -a, -c
    return a, c, p @ a - c, float(sv[0] / np.sqrt(len(p)))


def fit_normal_development(frames: FrameSet, tol: float | None = None,
                           origin_tol: float | None = None) -> NormalDevelopment:
    if not frames.has_rm:
        raise InsufficientDataError("frames carry no rotation-minimizing curvatures")
    n = len(frames)
    if n < MIN_SAMPLES:
        raise InsufficientDataError(f"need at least {MIN_SAMPLES} samples", samples=n)
    pts = np.stack([frames.kappa1, frames.kappa2], axis=-1)
    scale = float(np.sqrt(np.mean(np.sum(pts ** 2, axis=-1))))
    tol = 1e-4 * scale if tol is None else float(tol)
    origin_tol = 1e-3 * scale if origin_tol is None else float(origin_tol)
    a, c, res, spread = tls_line(pts)
    rms = float(np.sqrt(np.mean(res ** 2)))
    kappa = frames.kappa
    kbar = float(np.mean(kappa))
    kappa_constant = bool(np.max(np.abs(kappa - kbar)) <= tol)
    isotropic = frames.kind.is_isotropic
    radius = 1.0 / abs(kbar) if kappa_constant and kbar != 0 else None

    common = dict(kind=frames.kind, s=frames.s, points=pts, rms_residual=rms,
                  max_residual=float(np.max(np.abs(res))), kappa_constant=kappa_constant,
                  tol=tol, origin_tol=origin_tol, scale=scale, eps=frames.eps)

    if spread <= tol:
        # development collapsed to a point: theta is constant, so tau vanishes and the
        # top view is a circle, which lies on a plane and on a cylinder alike
        centroid = pts.mean(axis=0)
        return NormalDevelopment(line=(float(a[0]), float(a[1]), c),
                                 origin_distance=float(np.linalg.norm(centroid)),
                                 verdict=Verdict.PLANE, radius=radius, degenerate_point=True,
                                 planar=True, cylindrical=isotropic and radius is not None,
                                 **common)

    if rms > tol:
        verdict = Verdict.GENERIC
    elif c <= origin_tol:
        verdict = Verdict.PLANE
    elif not isotropic:
        verdict = Verdict.SPHERICAL
    elif kappa_constant:
        verdict = Verdict.SPHERICAL_CYLINDRICAL
    else:
        verdict = Verdict.SPHERICAL_PARABOLIC
    return NormalDevelopment(line=(float(a[0]), float(a[1]), c), origin_distance=c,
                             verdict=verdict,
                             radius=radius if verdict is Verdict.SPHERICAL_CYLINDRICAL else None,
                             planar=verdict is Verdict.PLANE,
                             cylindrical=verdict is Verdict.SPHERICAL_CYLINDRICAL, **common)


@dataclass(frozen=True)
class ClassifyConfig:
    tau0: float = 0.0
    tol: float | None = None
    origin_tol: float | None = None
    cross_check: bool = True
    drift_tol: float = 1e-4
    check_points: int = 200
    # osculating spheres are sampled where |tau kappa^2| exceeds this fraction of its maximum
    relative_cutoff: float = 1e-2
    admissibility_tol: float = 1e-6


@dataclass(frozen=True)
class ClassificationReport:
    development: NormalDevelopment
    frames: FrameSet = field(repr=False)
    cross_check: dict | None = None
    frenet_criterion: float | None = None
    tau0: float = 0.0

    @property
    def verdict(self) -> Verdict:
        return self.development.verdict

    def to_json(self) -> dict:
        return {"space": self.development.kind.value, "verdict": self.verdict.value,
                "tau0": self.tau0, "eps": self.frames.eps, "eta": self.frames.eta,
                "development": self.development.to_json(), "cross_check": self.cross_check,
                "frenet_criterion": self.frenet_criterion,
                "length": float(self.frames.s[-1])}


def _check_indices(frames: FrameSet, config: ClassifyConfig):
    tk2 = np.abs(frames.tau * frames.kappa ** 2)
    peak = float(np.max(tk2))
    if peak < DEGENERACY_THRESHOLD:
        return np.array([], dtype=int)
    ok = np.flatnonzero(tk2 >= max(config.relative_cutoff * peak, DEGENERACY_THRESHOLD))
    if len(ok) > config.check_points:
        ok = ok[np.linspace(0, len(ok) - 1, config.check_points).round().astype(int)]
    return ok


def sphere_drift(frames: FrameSet, config: ClassifyConfig = ClassifyConfig()) -> dict | None:
    """Spread of the osculating spheres over the curve.

    Isotropic spaces compare the general-form coefficients; Euclidean space
    compares centers and radii.  Drift is relative to ``max(1, |median|)``.
    """
    idx = _check_indices(frames, config)
    spheres = osculating_spheres(frames, idx)
    if len(spheres) < 2:
        return None
    if frames.kind is SpaceKind.EUCLIDEAN:
        centers = np.array([o.center for o in spheres])
        radii = np.array([o.radius for o in spheres])
        med_c, med_r = np.median(centers, axis=0), float(np.median(radii))
        center_drift = float(np.max(np.linalg.norm(centers - med_c, axis=-1))
                             / max(1.0, float(np.linalg.norm(med_c)), med_r))
        radius_drift = float(np.max(np.abs(radii - med_r)) / max(1.0, med_r))
        drift = max(center_drift, radius_drift)
        detail = {"center": med_c.tolist(), "radius": med_r, "center_drift": center_drift,
                  "radius_drift": radius_drift}
    else:
        coeffs = np.array([o.coeffs for o in spheres])
        med = np.median(coeffs, axis=0)
        drift = float(np.max(np.abs(coeffs - med)) / max(1.0, float(np.max(np.abs(med)))))
        detail = {"coefficients": dict(zip(("c1", "c2", "c3", "c4"), med.tolist())),
                  "coefficient_drift": drift}
    return {"points": len(spheres), "drift": drift, "tol": config.drift_tol,
            "constant": drift <= config.drift_tol,
            "max_collinearity": max(o.collinearity for o in spheres), **detail}


def frenet_criterion(frames: FrameSet, config: ClassifyConfig = ClassifyConfig()) -> float | None:
    """``max |d/ds (kappa'/(kappa**2 tau))|`` over samples with torsion away from zero."""
    if frames.kind is not SpaceKind.ISOTROPIC:
        return None
    tk2 = frames.tau * frames.kappa ** 2
    peak = float(np.max(np.abs(tk2)))
    if peak < DEGENERACY_THRESHOLD:
        return None
    good = np.abs(tk2) >= max(config.relative_cutoff * peak, DEGENERACY_THRESHOLD)
    g = np.where(good, frames.kappa_prime / np.where(good, tk2, 1.0), 0.0)
    dg = differentiate_samples(g, frames.ds, 1, 4)
    # drop samples whose stencil touches a masked-out neighbour
    width = 3
    pad = np.concatenate([np.zeros(width, bool), good, np.zeros(width, bool)])
    clean = np.all([pad[k:k + len(good)] for k in range(2 * width + 1)], axis=0)
    if not np.any(clean):
        return None
    return float(np.max(np.abs(dg[clean])))


def classify_frames(frames: FrameSet, config: ClassifyConfig = ClassifyConfig()):
    dev = fit_normal_development(frames, config.tol, config.origin_tol)
    cross = sphere_drift(frames, config) if config.cross_check else None
    crit = frenet_criterion(frames, config) if config.cross_check else None
    return ClassificationReport(dev, frames, cross, crit, float(frames.tau0 or 0.0))


def classify_curve(curve: Curve, config: ClassifyConfig | None = None, **overrides):
    """Frames, normal-development fit and osculating-sphere cross-check in one call."""
    config = config or ClassifyConfig()
    if overrides:
        config = ClassifyConfig(**{**config.__dict__, **overrides})
    frames = rm_frames(curve, config.tau0, tol=config.admissibility_tol) \
        if curve.kind.is_isotropic else rm_frames(curve, config.tau0)
    return classify_frames(frames, config)


__all__ = ["Verdict", "NormalDevelopment", "ClassificationReport", "ClassifyConfig",
           "tls_line", "fit_normal_development", "sphere_drift", "frenet_criterion",
           "classify_frames", "classify_curve"]
