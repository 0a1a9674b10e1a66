"""Frenet, rotation-minimizing and bivector frames along curves.

Every frame routine works on an arc-length grid ``s_0 < ... < s_{N-1}`` and
returns a :class:`FrameSet` holding one array per field, stacked along the
first axis.  Indexing a FrameSet yields a :class:`FrameSample`.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from .curve import (ArclengthCurve, Curve, admissibility, arclength_reparametrize,
                    differentiate_samples, top_view_det)
from .errors import InvalidInputError, NonAdmissibleError
from .spaces import SpaceKind, cross, cross_euclidean, cross_minkowski

_B = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class FrameSample:
    s: float
    point: np.ndarray
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    n1: np.ndarray | None
    n2: np.ndarray | None
    kappa: float
    tau: float
    kappa1: float | None
    kappa2: float | None
    theta: float | None
    eps: int
    eta: int
    T: np.ndarray | None = None
    N: np.ndarray | None = None
    B: np.ndarray | None = None
    N1: np.ndarray | None = None
    N2: np.ndarray | None = None


@dataclass(frozen=True)
class FrameSet:
    """Frame fields sampled on a uniform arc-length grid.

    ``raw1..raw3`` are the curve derivatives in its original parameter at the
    sample points (kept for checks that must not go through the frame), and
    ``d1..d3`` the arc-length derivatives.  ``eps``/``eta`` are the causal
    signs (both +1 outside pseudo-isotropic space).
    """

    kind: SpaceKind
    s: np.ndarray
    param: np.ndarray
    point: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    raw1: np.ndarray
    raw2: np.ndarray
    raw3: np.ndarray
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    kappa_prime: np.ndarray
    eps: int = 1
    eta: int = 1
    n1: np.ndarray | None = None
    n2: np.ndarray | None = None
    kappa1: np.ndarray | None = None
    kappa2: np.ndarray | None = None
    kappa1_prime: np.ndarray | None = None
    kappa2_prime: np.ndarray | None = None
    theta: np.ndarray | None = None
    tau0: float | None = None
    T: np.ndarray | None = None
    N: np.ndarray | None = None
    B: np.ndarray | None = None
    N1: np.ndarray | None = None
    N2: np.ndarray | None = None
    curve: Curve | None = dataclasses.field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.s)

    def __getitem__(self, i) -> FrameSample:
        def pick(x):
            return None if x is None else x[i]
        return FrameSample(
            s=float(self.s[i]), point=self.point[i], t=self.t[i], n=self.n[i], b=self.b[i],
            n1=pick(self.n1), n2=pick(self.n2), kappa=float(self.kappa[i]),
            tau=float(self.tau[i]),
            kappa1=None if self.kappa1 is None else float(self.kappa1[i]),
            kappa2=None if self.kappa2 is None else float(self.kappa2[i]),
            theta=None if self.theta is None else float(self.theta[i]),
            eps=self.eps, eta=self.eta, T=pick(self.T), N=pick(self.N), B=pick(self.B),
            N1=pick(self.N1), N2=pick(self.N2))

    @property
    def ds(self) -> float:
        return float(self.s[1] - self.s[0])

    @property
    def has_rm(self) -> bool:
        return self.n1 is not None

    def replace(self, **changes) -> "FrameSet":
        return dataclasses.replace(self, **changes)


def _prepare(curve: Curve, tol: float, check: bool):
    if check:
        report = admissibility(curve.base if isinstance(curve, ArclengthCurve) else curve,
                               tol=tol)
        if not report.admissible:
            raise NonAdmissibleError("curve is not admissible: " + "; ".join(report.reasons),
                                     report=report)
    arc = arclength_reparametrize(curve)
    s = np.linspace(0.0, arc.length, arc.samples)
    param = arc.parameter_of(s)
    d1, d2, d3, d4 = arc.derivatives(s, 4)
    raw = arc.base.derivatives(param, 3)
    return arc, s, param, d1, d2, d3, d4, raw


def _kappa_prime_top(sign, d1, d2, d3):
    # unit speed: kappa = sign * det(d1, d2) and its derivative is sign * det(d1, d3)
    return sign * top_view_det(d1, d3)


def frenet_isotropic(curve: Curve, tol: float = 1e-6, check: bool = True) -> FrameSet:
    """Isotropic Frenet frame ``(t, n, b=(0,0,1))`` with signed curvature and torsion.

    Curvature is the top-view curvature ``x'y''-x''y'``; torsion is
    ``det(a', a'', a''') / (x'y''-x''y')**2`` in arc length, which is
    invariant under reparametrization.
    """
    if curve.kind is not SpaceKind.ISOTROPIC:
        raise InvalidInputError("frenet_isotropic needs a simply isotropic curve",
                                space=curve.kind.value)
    arc, s, param, d1, d2, d3, _, raw = _prepare(curve, tol, check)
    det = top_view_det(d1, d2)
    kappa = det
    tau = np.linalg.det(np.stack([d1, d2, d3], axis=-2)) / det ** 2
    t = d1
    n = d2 / kappa[:, None]
    b = np.broadcast_to(_B, t.shape).copy()
    return FrameSet(SpaceKind.ISOTROPIC, s, param, arc.evaluate(s), d1, d2, d3, *raw,
                    t=t, n=n, b=b, kappa=kappa, tau=tau,
                    kappa_prime=_kappa_prime_top(1.0, d1, d2, d3), curve=arc)


def frenet_pseudo(curve: Curve, tol: float = 1e-6, check: bool = True) -> FrameSet:
    """Pseudo-isotropic Frenet frame.

    ``eps = <t,t>`` and ``eta = -eps``; the stored curvature is the signed
    ``kappa = -eps (x'y''-x''y')`` and ``n = t'/(eta kappa)``, so that
    ``<n,n> = eta`` and ``det(t, n, b) = 1``.
    """
    if curve.kind is not SpaceKind.PSEUDO:
        raise InvalidInputError("frenet_pseudo needs a pseudo-isotropic curve",
                                space=curve.kind.value)
    arc, s, param, d1, d2, d3, _, raw = _prepare(curve, tol, check)
    q = d1[:, 0] ** 2 - d1[:, 1] ** 2
    eps = int(np.sign(np.median(q)))
    if eps == 0 or np.any(np.sign(q) != eps):
        raise NonAdmissibleError("causal character is not constant (or lightlike)")
    eta = -eps
    acc = d2[:, 0] ** 2 - d2[:, 1] ** 2
    if np.any(np.sign(acc) != eta):
        raise NonAdmissibleError("acceleration became lightlike: numerical breakdown",
                                 min_abs=float(np.min(np.abs(acc))))
    det = top_view_det(d1, d2)
    kappa = -eps * det
    tau = np.linalg.det(np.stack([d1, d2, d3], axis=-2)) / kappa ** 2
    n = d2 / (eta * kappa)[:, None]
    b = np.broadcast_to(_B, d1.shape).copy()
    return FrameSet(SpaceKind.PSEUDO, s, param, arc.evaluate(s), d1, d2, d3, *raw,
                    t=d1, n=n, b=b, kappa=kappa, tau=tau,
                    kappa_prime=_kappa_prime_top(-eps, d1, d2, d3), eps=eps, eta=eta,
                    curve=arc)


def frenet_euclidean(curve: Curve, tol: float = 1e-8, check: bool = True) -> FrameSet:
    """Euclidean Frenet frame; requires non-vanishing curvature."""
    if curve.kind is not SpaceKind.EUCLIDEAN:
        raise InvalidInputError("frenet_euclidean needs a Euclidean curve",
                                space=curve.kind.value)
    arc, s, param, d1, d2, d3, _, raw = _prepare(curve, tol, False)
    kappa = np.linalg.norm(d2, axis=-1)
    if check and np.min(kappa) < tol:
        raise NonAdmissibleError("curvature vanishes; the Frenet frame is undefined",
                                 s=float(s[np.argmin(kappa)]), min_kappa=float(np.min(kappa)))
    n = d2 / kappa[:, None]
    b = np.cross(d1, n)
    tau = np.linalg.det(np.stack([d1, d2, d3], axis=-2)) / kappa ** 2
    # kappa' = <d2, d3>/kappa in unit speed
    kappa_prime = np.sum(d2 * d3, axis=-1) / kappa
    return FrameSet(SpaceKind.EUCLIDEAN, s, param, arc.evaluate(s), d1, d2, d3, *raw,
                    t=d1, n=n, b=b, kappa=kappa, tau=tau, kappa_prime=kappa_prime, curve=arc)


def frenet(curve: Curve, **kwargs) -> FrameSet:
    return {SpaceKind.EUCLIDEAN: frenet_euclidean, SpaceKind.ISOTROPIC: frenet_isotropic,
            SpaceKind.PSEUDO: frenet_pseudo}[curve.kind](curve, **kwargs)


def integrate_torsion(s, tau, tau0: float = 0.0) -> np.ndarray:
    """``theta(s) = int_{s_0}^s tau + tau0`` by cumulative composite Simpson."""
    return cumulative_simpson(tau, x=s, initial=0.0) + tau0


def rm_frame(frames: FrameSet, tau0: float = 0.0) -> FrameSet:
    """Rotation-minimizing frame of an isotropic Frenet frame.

    ``n1 = n - theta b`` and ``n2 = b`` with ``theta' = tau``; natural
    curvatures ``kappa1 = kappa`` and ``kappa2 = kappa theta`` (times ``eta``
    in pseudo-isotropic space).
    """
    if frames.kind is SpaceKind.EUCLIDEAN:
        raise InvalidInputError("use rm_frame_euclidean for Euclidean curves")
    theta = integrate_torsion(frames.s, frames.tau, tau0)
    eta = frames.eta
    n1 = frames.n - theta[:, None] * frames.b
    kappa1 = frames.kappa
    kappa2 = eta * frames.kappa * theta
    kappa1_prime = frames.kappa_prime
    kappa2_prime = eta * (frames.kappa_prime * theta + frames.kappa * frames.tau)
    return frames.replace(n1=n1, n2=frames.b.copy(), kappa1=kappa1, kappa2=kappa2,
                          kappa1_prime=kappa1_prime, kappa2_prime=kappa2_prime,
                          theta=theta, tau0=float(tau0))


def rm_frame_euclidean(curve: Curve | FrameSet, initial_normal=None, tol: float = 1e-8) -> FrameSet:
    """Bishop frame obtained by turning the Frenet normal plane by ``theta``, ``theta' = tau``.

    ``n1 = cos(theta) n - sin(theta) b`` and ``n2 = sin(theta) n + cos(theta) b``
    give ``kappa1 = kappa cos(theta)``, ``kappa2 = kappa sin(theta)``.  The
    initial angle is fixed by ``initial_normal`` (default: the Frenet normal).
    """
    frames = curve if isinstance(curve, FrameSet) else frenet_euclidean(curve, tol=tol)
    theta0 = 0.0
    if initial_normal is not None:
        v = np.asarray(initial_normal, dtype=float)
        if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-8 \
                or abs(float(v @ frames.t[0])) > 1e-8:
            raise InvalidInputError("initial normal must be a unit vector orthogonal to t(s0)",
                                    initial_normal=v.tolist())
        theta0 = float(np.arctan2(-(v @ frames.b[0]), v @ frames.n[0]))
    theta = integrate_torsion(frames.s, frames.tau, theta0)
    c, s_ = np.cos(theta)[:, None], np.sin(theta)[:, None]
    n1 = c * frames.n - s_ * frames.b
    n2 = s_ * frames.n + c * frames.b
    k, kp, tau = frames.kappa, frames.kappa_prime, frames.tau
    kappa1 = k * np.cos(theta)
    kappa2 = k * np.sin(theta)
    kappa1_prime = kp * np.cos(theta) - k * tau * np.sin(theta)
    kappa2_prime = kp * np.sin(theta) + k * tau * np.cos(theta)
    return frames.replace(n1=n1, n2=n2, kappa1=kappa1, kappa2=kappa2,
                          kappa1_prime=kappa1_prime, kappa2_prime=kappa2_prime,
                          theta=theta, tau0=theta0)


def rm_frames(curve: Curve, tau0: float = 0.0, **kwargs) -> FrameSet:
    """Frenet plus RM frame plus bivectors for a curve in any of the three spaces."""
    f = frenet(curve, **kwargs)
    if curve.kind is SpaceKind.EUCLIDEAN:
        f = rm_frame_euclidean(f)
        if tau0:
            f = _shift_euclidean(f, tau0)
    else:
        f = rm_frame(f, tau0)
    return bivector_frame(f)


def _shift_euclidean(frames: FrameSet, delta: float) -> FrameSet:
    theta = frames.theta + delta
    c, s_ = np.cos(theta)[:, None], np.sin(theta)[:, None]
    k, kp, tau = frames.kappa, frames.kappa_prime, frames.tau
    return frames.replace(
        n1=c * frames.n - s_ * frames.b, n2=s_ * frames.n + c * frames.b,
        kappa1=k * np.cos(theta), kappa2=k * np.sin(theta),
        kappa1_prime=kp * np.cos(theta) - k * tau * np.sin(theta),
        kappa2_prime=kp * np.sin(theta) + k * tau * np.cos(theta),
        theta=theta, tau0=frames.tau0 + delta)


def bivector_frame(frames: FrameSet) -> FrameSet:
    """Populate the Frenet bivectors (T, N, B) and, if present, the RM bivectors (N1, N2).

    Products are ``×_e`` in Euclidean and simply isotropic space and ``×_1``
    in pseudo-isotropic space: ``T = n × b``, ``N = b × t``, ``B = t × n``,
    ``N1 = n2 × t``, ``N2 = t × n1``.  ``T`` coincides for both frames.
    """
    x = cross_minkowski if frames.kind is SpaceKind.PSEUDO else cross_euclidean
    T = x(frames.n, frames.b)
    N = x(frames.b, frames.t)
    B = x(frames.t, frames.n)
    N1 = N2 = None
    if frames.has_rm:
        N1 = x(frames.n2, frames.t)
        N2 = x(frames.t, frames.n1)
    return frames.replace(T=T, N=N, B=B, N1=N1, N2=N2)


def _d(values, h):
    return differentiate_samples(values, h, 1, 4)


def _col(x):
    return np.asarray(x)[:, None]


def ode_residuals(frames: FrameSet, trim: int = 0, order: int = 6) -> dict:
    """Maximum norms of the frame ODE residuals.

    Frame derivatives come from difference quotients of the sampled frame in
    ``s``; the residual therefore mixes frame error with differencing error,
    and order 6 keeps the latter well below the former on smooth curves.
    """
    h = frames.ds

    def _d(values, h):
        return differentiate_samples(values, h, 1, order)

    sl = slice(trim, len(frames) - trim if trim else None)
    k, tau, eps, eta = frames.kappa, frames.tau, frames.eps, frames.eta
    dt, dn, db = _d(frames.t, h), _d(frames.n, h), _d(frames.b, h)
    out = {}

    def mx(r):
        return float(np.max(np.linalg.norm(r[sl], axis=-1)))

    if frames.kind is SpaceKind.EUCLIDEAN:
        out["frenet_t"] = mx(dt - _col(k) * frames.n)
        out["frenet_n"] = mx(dn + _col(k) * frames.t - _col(tau) * frames.b)
        out["frenet_b"] = mx(db + _col(tau) * frames.n)
    else:
        sign = -eps if frames.kind is SpaceKind.PSEUDO else 1
        out["frenet_t"] = mx(dt - sign * _col(k) * frames.n)
        out["frenet_n"] = mx(dn - (-eps if frames.kind is SpaceKind.PSEUDO else -1)
                             * _col(k) * frames.t - _col(tau) * frames.b)
        out["frenet_b"] = mx(db)
    if frames.has_rm:
        k1, k2 = frames.kappa1, frames.kappa2
        dn1, dn2 = _d(frames.n1, h), _d(frames.n2, h)
        if frames.kind is SpaceKind.PSEUDO:
            out["rm_t"] = mx(dt - eta * _col(k1) * frames.n1 - _col(k2) * frames.n2)
            out["rm_n1"] = mx(dn1 + eps * _col(k1) * frames.t)
            out["rm_n2"] = mx(dn2)
        elif frames.kind is SpaceKind.ISOTROPIC:
            out["rm_t"] = mx(dt - _col(k1) * frames.n1 - _col(k2) * frames.n2)
            out["rm_n1"] = mx(dn1 + _col(k1) * frames.t)
            out["rm_n2"] = mx(dn2)
        else:
            out["rm_t"] = mx(dt - _col(k1) * frames.n1 - _col(k2) * frames.n2)
            out["rm_n1"] = mx(dn1 + _col(k1) * frames.t)
            out["rm_n2"] = mx(dn2 + _col(k2) * frames.t)
        # components of n1' and n2' off the tangent
        basis = np.stack([frames.t, frames.n1, frames.n2], axis=-1)
        c1 = np.linalg.solve(basis, dn1[..., None])[..., 0]
        c2 = np.linalg.solve(basis, dn2[..., None])[..., 0]
        out["rm_property"] = float(max(np.max(np.abs(c1[sl, 1:])), np.max(np.abs(c2[sl, 1:]))))
    if frames.T is not None and frames.kind is not SpaceKind.EUCLIDEAN:
        dT, dN, dB = _d(frames.T, h), _d(frames.N, h), _d(frames.B, h)
        if frames.kind is SpaceKind.PSEUDO:
            out["bivector_T"] = mx(dT - eps * _col(k) * frames.N)
            out["bivector_N"] = mx(dN + eta * _col(k) * frames.T)
        else:
            out["bivector_T"] = mx(dT - _col(k) * frames.N)
            out["bivector_N"] = mx(dN + _col(k) * frames.T)
        out["bivector_B"] = mx(dB + _col(tau) * frames.N)
        if frames.N1 is not None:
            k1, k2 = frames.kappa1, frames.kappa2
            dN1, dN2 = _d(frames.N1, h), _d(frames.N2, h)
            if frames.kind is SpaceKind.PSEUDO:
                out["bivector_rm_T"] = mx(dT - eps * _col(k1) * frames.N1)
                out["bivector_N1"] = mx(dN1 + eta * _col(k1) * frames.T)
            else:
                out["bivector_rm_T"] = mx(dT - _col(k1) * frames.N1)
                out["bivector_N1"] = mx(dN1 + _col(k1) * frames.T)
            out["bivector_N2"] = mx(dN2 + _col(k2) * frames.T)
    return out


def curvature_identity_residual(frames: FrameSet, trim: int = 0) -> float:
    """Max of ``|k1 k2' - k1' k2 - sigma tau k**2|`` with ``k_i'`` from sampled differences.

    ``sigma`` is 1 except in pseudo-isotropic space, where it is ``eta``.
    """
    h = frames.ds
    k1p = _d(frames.kappa1, h)
    k2p = _d(frames.kappa2, h)
    sigma = frames.eta if frames.kind is SpaceKind.PSEUDO else 1.0
    r = frames.kappa1 * k2p - k1p * frames.kappa2 - sigma * frames.tau * frames.kappa ** 2
    sl = slice(trim, len(frames) - trim if trim else None)
    return float(np.max(np.abs(r[sl])))


def orientation(frames: FrameSet) -> np.ndarray:
    """``det(t, n1, n2)`` along the curve (``det(t, n, b)`` before the RM step)."""
    n1 = frames.n1 if frames.has_rm else frames.n
    n2 = frames.n2 if frames.has_rm else frames.b
    return np.linalg.det(np.stack([frames.t, n1, n2], axis=-2))


FRAME_CSV_COLUMNS = ["s", "t.x", "t.y", "t.z", "n1.x", "n1.y", "n1.z", "n2.x", "n2.y", "n2.z",
                     "kappa", "tau", "kappa1", "kappa2", "theta"]


def frame_rows(frames: FrameSet):
    """Rows for the frame CSV table."""
    for i in range(len(frames)):
        yield [frames.s[i], *frames.t[i], *frames.n1[i], *frames.n2[i], frames.kappa[i],
               frames.tau[i], frames.kappa1[i], frames.kappa2[i], frames.theta[i]]


__all__ = ["FrameSample", "FrameSet", "frenet", "frenet_isotropic", "frenet_pseudo",
           "frenet_euclidean", "rm_frame", "rm_frame_euclidean", "rm_frames", "bivector_frame",
           "ode_residuals", "curvature_identity_residual", "orientation", "integrate_torsion",
           "cross"]
