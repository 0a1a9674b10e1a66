"""Property suite behind ``isokit selftest``: eight numbered checks, each returning a result.

Every check draws its random inputs from a ``numpy.random.Generator`` seeded
by the caller, so a failing run is reproduced by passing the printed seed.
``quick`` lowers sample counts and relaxes only the finite-difference based
tolerances (by 10x); exact-arithmetic checks keep their tolerances.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import testcurves as tc
from .classify import ClassifyConfig, Verdict, classify_curve
from .curve import Curve, top_view_det
from .frames import curvature_identity_residual, frenet_isotropic, frenet_pseudo, ode_residuals, rm_frames
from .gcnum import DualNumber, LorentzNumber, hyperbolic_rotation, to_lightcone
from .spaces import (IsoMotion, SpaceKind, apply_motion, causal_character, codistance, distance,
                     strubecker_motion, to_null_coordinates)
from .spheres import osculating_sphere, spherical_image, UNIT_PARABOLIC_PSEUDO


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "seconds": self.seconds, "detail": self.detail}


# 1 -----------------------------------------------------------------------------------------

def check_rings(rng, quick=False):
    n = 2000 if quick else 10_000
    p = rng.uniform(-10, 10, size=(n, 2))
    q = rng.uniform(-10, 10, size=(n, 2))
    worst = dict(dual_product=0.0, lorentz_product=0.0, dual_matrix=0.0, lorentz_matrix=0.0,
                 lightcone=0.0)
    for (p1, p2), (q1, q2) in zip(p, q):
        d = DualNumber(p1, p2) * DualNumber(q1, q2)
        worst["dual_product"] = max(worst["dual_product"],
                                    abs(d.re - p1 * q1), abs(d.im - (p1 * q2 + q1 * p2)))
        md = DualNumber(p1, p2).matrix() @ DualNumber(q1, q2).matrix()
        worst["dual_matrix"] = max(worst["dual_matrix"], float(np.max(np.abs(md - d.matrix()))))
        lp, lq = LorentzNumber(p1, p2), LorentzNumber(q1, q2)
        l = lp * lq
        worst["lorentz_product"] = max(worst["lorentz_product"],
                                       abs(l.re - (p1 * q1 + p2 * q2)),
                                       abs(l.im - (p1 * q2 + q1 * p2)))
        ml = lp.matrix() @ lq.matrix()
        worst["lorentz_matrix"] = max(worst["lorentz_matrix"],
                                      float(np.max(np.abs(ml - l.matrix()))))
        worst["lightcone"] = max(worst["lightcone"], abs(l.plus - lp.plus * lq.plus),
                                 abs(l.minus - lp.minus * lq.minus))
    return all(v <= 1e-12 for v in worst.values()), {"pairs": n, **worst}


# 2 -----------------------------------------------------------------------------------------

def _random_motion(rng, kind):
    a, b, c, c1, c2 = rng.uniform(-3, 3, size=5)
    phi = rng.uniform(-math.pi, math.pi) if kind is SpaceKind.ISOTROPIC else rng.uniform(-1.5, 1.5)
    return IsoMotion(kind, a, b, c, c1, c2, phi)


def check_motions(rng, quick=False):
    draws = 200 if quick else 1000
    curves = {k: [tc.random_curve(k, rng, samples=200) for _ in range(3)]
              for k in (SpaceKind.ISOTROPIC, SpaceKind.PSEUDO)}
    worst_d = worst_cd = 0.0
    causal_flips = 0
    for i in range(draws):
        kind = SpaceKind.ISOTROPIC if i % 2 == 0 else SpaceKind.PSEUDO
        curve = curves[kind][int(rng.integers(0, 3))]
        pts = curve.evaluate(rng.uniform(curve.t_min, curve.t_max, size=2))
        m = _random_motion(rng, kind)
        img = apply_motion(m, pts)
        d0, d1 = distance(kind, pts[0], pts[1]), distance(kind, img[0], img[1])
        worst_d = max(worst_d, abs(d1 - d0) / max(1.0, d0))
        # codistance is the invariant of pairs sharing a top view
        above = pts[0] + np.array([0.0, 0.0, rng.uniform(-5, 5)])
        up = apply_motion(m, above)
        cd0, cd1 = codistance(kind, pts[0], above), codistance(kind, img[0], up)
        worst_cd = max(worst_cd, abs(cd1 - cd0) / max(1.0, cd0))
        if kind is SpaceKind.PSEUDO:
            v0, v1 = pts[1] - pts[0], img[1] - img[0]
            causal_flips += causal_character(v0) is not causal_character(v1)
    passed = worst_d <= 1e-10 and worst_cd <= 1e-10 and causal_flips == 0
    return passed, {"draws": draws, "distance": worst_d, "codistance": worst_cd,
                    "causal_flips": causal_flips}


# 3 -----------------------------------------------------------------------------------------

def frame_suite_curves(rng, quick=False):
    n = 600 if quick else 2000
    curves = [tc.helix(samples=n), tc.hyperbolic_helix(samples=n), tc.planar_circle(samples=n)]
    count = 6 if quick else 20
    for i in range(count):
        kind = SpaceKind.ISOTROPIC if i % 2 == 0 else SpaceKind.PSEUDO
        curves.append(tc.random_curve(kind, rng, samples=n))
    return curves


def check_frame_odes(rng, quick=False):
    tol_ode, tol_id = (1e-4, 1e-3) if quick else (1e-5, 1e-4)
    worst = {}
    worst_id = 0.0
    for curve in frame_suite_curves(rng, quick):
        f = rm_frames(curve)
        for key, val in ode_residuals(f).items():
            worst[key] = max(worst.get(key, 0.0), val)
        worst_id = max(worst_id, curvature_identity_residual(f))
    passed = all(v <= tol_ode for v in worst.values()) and worst_id <= tol_id
    return passed, {**worst, "identity": worst_id, "tol_ode": tol_ode, "tol_identity": tol_id}


# 4 -----------------------------------------------------------------------------------------

def _helix_position(t):
    t = np.asarray(t, dtype=float)
    return np.stack([np.cos(t), np.sin(t), t], axis=-1)


def determinant_oracle(position, t, h):
    """Curvature and torsion straight from determinants of order-4 difference quotients."""
    c = Curve("isotropic", position, -10.0, 10.0, fd_order=4, fd_step=h)
    d1, d2, d3 = c.derivatives(t, 3)
    det2 = top_view_det(d1, d2)
    speed = np.hypot(d1[..., 0], d1[..., 1])
    kappa = det2 / speed ** 3
    tau = np.linalg.det(np.stack([d1, d2, d3], axis=-2)) / det2 ** 2
    return kappa, tau


def check_known_values(rng, quick=False):
    t = rng.uniform(0.0, 2 * math.pi, size=25)
    h = 0.1
    k1, t1 = determinant_oracle(_helix_position, t, h)
    k2, t2 = determinant_oracle(_helix_position, t, h / 2)
    e1 = max(np.max(np.abs(k1 - 1)), np.max(np.abs(t1 - 1)))
    e2 = max(np.max(np.abs(k2 - 1)), np.max(np.abs(t2 - 1)))
    order = math.log2(e1 / e2) if e2 > 0 else float("inf")
    # library path, finite differences and exact derivatives
    n = 600 if quick else 2000
    fd_helix = Curve("isotropic", _helix_position, 0.0, 2 * math.pi, samples=n)
    lib = frenet_isotropic(fd_helix)
    lib_fd = max(np.max(np.abs(lib.kappa - 1)), np.max(np.abs(lib.tau - 1)))
    ex = frenet_isotropic(tc.helix(samples=n))
    lib_exact = max(np.max(np.abs(ex.kappa - 1)), np.max(np.abs(ex.tau - 1)))
    # pseudo helices: |kappa| = 1 and sign(kappa) = -eps sign(x'y'' - x''y')
    sign_ok, abs_err = True, 0.0
    for curve in (tc.hyperbolic_helix(samples=n),
                  tc.jet_curve("pseudo", (tc.cosh, tc.sinh, lambda s: s), -1.5, 1.5, n)):
        f = frenet_pseudo(curve)
        d1, d2 = curve.derivative(f.param, 1), curve.derivative(f.param, 2)
        expect = -f.eps * np.sign(top_view_det(d1, d2))
        sign_ok &= bool(np.all(np.sign(f.kappa) == expect))
        abs_err = max(abs_err, float(np.max(np.abs(np.abs(f.kappa) - 1))))
    passed = (e2 <= 1e-6 and 3.5 <= order <= 4.5 and lib_fd <= 1e-6 and lib_exact <= 1e-6
              and abs_err <= 1e-6 and sign_ok)
    return passed, {"oracle_error_h": e1, "oracle_error_h2": e2, "observed_order": order,
                    "library_fd": lib_fd, "library_exact": lib_exact,
                    "pseudo_abs_kappa": abs_err, "pseudo_sign_rule": sign_ok}


# 5 -----------------------------------------------------------------------------------------

def characterization_cases(quick=False):
    """``(label, curve, expected verdict, expected radius or None, cross-check?)``."""
    n = 800 if quick else 2000
    cases = []
    for kind in (SpaceKind.ISOTROPIC, SpaceKind.PSEUDO):
        for r in (0.5, 1.0, 2.0):
            cases.append((f"{kind.value} cylinder r={r:g}", tc.cylindrical_curve(kind, r, samples=n),
                          Verdict.SPHERICAL_CYLINDRICAL, r, True))
        if kind is SpaceKind.PSEUDO:
            cases.append(("pseudo-isotropic cylinder r=1 (timelike)",
                          tc.cylindrical_curve(kind, 1.0, sign=-1, samples=n),
                          Verdict.SPHERICAL_CYLINDRICAL, 1.0, True))
        for p in (0.5, 1.0, 2.0):
            cases.append((f"{kind.value} paraboloid p={p:g}", tc.parabolic_curve(kind, p, samples=n),
                          Verdict.SPHERICAL_PARABOLIC, None, True))
        cases.append((f"{kind.value} plane", tc.plane_curve(kind, samples=n), Verdict.PLANE,
                      None, False))
        cases.append((f"{kind.value} perturbed paraboloid",
                      tc.perturbed(tc.parabolic_curve)(kind, 1.0, samples=n), Verdict.GENERIC,
                      None, False))
    cases.append(("isotropic helix", tc.helix(samples=n), Verdict.SPHERICAL_CYLINDRICAL, 1.0, True))
    cases.append(("isotropic circle", tc.planar_circle(samples=n), Verdict.PLANE, None, False))
    cases.append(("euclidean spherical spiral", tc.spherical_spiral(samples=n), Verdict.SPHERICAL,
                  None, True))
    cases.append(("euclidean tilted ellipse", tc.euclidean_plane_curve(samples=n), Verdict.PLANE,
                  None, False))
    cases.append(("euclidean perturbed spiral", tc.perturbed(tc.spherical_spiral)(samples=n),
                  Verdict.GENERIC, None, False))
    return cases


def check_characterization(rng, quick=False):
    rows, passed = [], True
    for label, curve, expected, radius, cross in characterization_cases(quick):
        rep = classify_curve(curve)
        dev = rep.development
        ok = dev.verdict is expected
        kappa_error = None
        if expected is Verdict.SPHERICAL_CYLINDRICAL:
            # signed kappa can be negative in pseudo-isotropic space; compare |kappa|
            kappa_error = float(np.max(np.abs(np.abs(rep.frames.kappa) - 1.0 / radius)))
            ok &= kappa_error <= 1e-4
            ok &= dev.radius is not None and abs(dev.radius - radius) <= 1e-4 * radius
        if expected.spherical:
            ok &= dev.rms_residual <= 1e-4 * dev.scale and dev.origin_distance > 10 * dev.origin_tol
        drift = None
        if cross:
            drift = rep.cross_check["drift"] if rep.cross_check else float("inf")
            ok &= drift <= 1e-4
        passed &= ok
        rows.append({"case": label, "verdict": dev.verdict.value, "expected": expected.value,
                     "rms": dev.rms_residual, "origin_distance": dev.origin_distance,
                     "scale": dev.scale, "origin_tol": dev.origin_tol,
                     "kappa_error": kappa_error, "drift": drift, "ok": bool(ok)})
    return passed, {"cases": rows}


# 6 -----------------------------------------------------------------------------------------

def check_dual_path(rng, quick=False):
    per_space = 30 if quick else 100
    worst, beta = {}, 0.0
    for kind in (SpaceKind.EUCLIDEAN, SpaceKind.ISOTROPIC, SpaceKind.PSEUDO):
        done, worst[kind.value] = 0, 0.0
        while done < per_space:
            f = rm_frames(tc.random_curve(kind, rng, samples=400))
            tk2 = np.abs(f.tau * f.kappa ** 2)
            good = np.flatnonzero(tk2 >= 1e-3 * max(1.0, float(np.max(tk2))))
            if len(good) == 0:
                continue
            for i in rng.choice(good, size=min(10, len(good), per_space - done), replace=False):
                o = osculating_sphere(f, int(i))
                worst[kind.value] = max(worst[kind.value], o.collinearity)
                if kind is SpaceKind.EUCLIDEAN:
                    beta = max(beta, o.beta_residual)
                done += 1
    passed = all(v <= 1e-8 for v in worst.values()) and beta <= 1e-10
    return passed, {"points_per_space": per_space, "collinearity": worst, "beta_residual": beta}


# 7 -----------------------------------------------------------------------------------------

def check_spherical_image(rng, quick=False):
    count = 6 if quick else 20
    on = agree = biv = 0.0
    for _ in range(count):
        f = rm_frames(tc.random_curve(SpaceKind.PSEUDO, rng, samples=600))
        img = spherical_image(f)
        on = max(on, float(np.max(np.abs(UNIT_PARABOLIC_PSEUDO.defining_function(img.points)))))
        agree = max(agree, img.agreement)
        biv = max(biv, img.bivector_residual)
    passed = on <= 1e-8 and agree <= 1e-8 and biv <= 1e-6
    return passed, {"curves": count, "on_sphere": on, "z_agreement": agree, "bivector": biv}


# 8 -----------------------------------------------------------------------------------------

def check_gauge(rng, quick=False):
    changed = []
    for label, curve, *_ in characterization_cases(quick):
        verdicts = {classify_curve(curve, ClassifyConfig(tau0=t0, cross_check=False)).verdict
                    for t0 in (-1.0, 0.0, 1.0)}
        if len(verdicts) != 1:
            changed.append({"case": label, "verdicts": sorted(v.value for v in verdicts)})
    worst = 0.0
    for phi in rng.uniform(-2, 2, size=50):
        p = math.exp(phi)
        m = strubecker_motion(p)
        worst = max(worst, float(np.max(np.abs(m.rotation() - hyperbolic_rotation(phi)))),
                    float(np.max(np.abs(to_lightcone(hyperbolic_rotation(phi))
                                        - np.diag([p, 1 / p])))))
        # full motion, read in null coordinates
        tr, sh = rng.uniform(-2, 2, size=3), rng.uniform(-2, 2, size=2)
        pts = rng.uniform(-3, 3, size=(4, 3))
        img = to_null_coordinates(strubecker_motion(p, tr, sh)(pts))
        X, Y, z = to_null_coordinates(pts).T
        want = np.stack([tr[0] + p * X, tr[1] + Y / p, tr[2] + sh[0] * X + sh[1] * Y + z], -1)
        worst = max(worst, float(np.max(np.abs(img - want)) / max(1.0, np.max(np.abs(want)))))
    passed = not changed and worst <= 1e-12
    return passed, {"gauge_changes": changed, "strubecker": worst}


# wall-clock limits (seconds) for the full-size runs
RUNTIME_BUDGET = {1: 1.0, 5: 30.0}

CHECKS = [
    (1, "ring and representation suite", check_rings),
    (2, "motion invariance suite", check_motions),
    (3, "frame ODE suite", check_frame_odes),
    (4, "known-value suite", check_known_values),
    (5, "spherical characterization suite", check_characterization),
    (6, "dual-path osculating sphere suite", check_dual_path),
    (7, "spherical image suite", check_spherical_image),
    (8, "gauge and equivalence suite", check_gauge),
]


def run_check(number: int, seed: int = 0, quick: bool = False) -> CheckResult:
    num, name, fn = CHECKS[number - 1]
    rng = np.random.default_rng([seed, num])
    start = time.perf_counter()
    try:
        passed, detail = fn(rng, quick)
    except Exception as exc:  # a crash is a failure of that check, not of the run
        passed, detail = False, {"exception": f"{type(exc).__name__}: {exc}"}
    elapsed = time.perf_counter() - start
    budget = RUNTIME_BUDGET.get(num)
    if budget is not None and not quick:
        detail = {**detail, "runtime_budget": budget}
        passed = passed and elapsed < budget
    return CheckResult(num, name, bool(passed), elapsed, detail)


def run_all(seed: int = 0, quick: bool = False, only=None):
    return [run_check(num, seed, quick) for num, _, _ in CHECKS if not only or num in only]


__all__ = ["CheckResult", "CHECKS", "RUNTIME_BUDGET", "run_check", "run_all", "determinant_oracle",
           "characterization_cases", "frame_suite_curves"]
