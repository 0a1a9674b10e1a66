"""Command-line front end: ``isokit frames|classify|sphere|selftest``.

Exit codes: 0 success, 1 invalid input or other error, 2 non-admissible curve
(the admissibility report is still written).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .classify import ClassifyConfig, classify_frames
from .curve import admissibility, curve_from_spec, load_curve
from .errors import InvalidInputError, IsokitError, NonAdmissibleError, SpeedError, SpecError
from .frames import (FRAME_CSV_COLUMNS, curvature_identity_residual, frame_rows, ode_residuals,
                     orientation, rm_frames)
from .selftest import run_all
from .spheres import Sphere, osculating_sphere

EXIT_OK, EXIT_ERROR, EXIT_NON_ADMISSIBLE = 0, 1, 2
MIN_SAMPLES = 64


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple = ()
    space: str | None = None
    samples: int | None = None
    fd_order: int | None = None
    fd_step: float | None = None
    tau0: float = 0.0
    tol: float | None = None
    origin_tol: float | None = None
    out: Path = Path(".")
    json: bool = False
    seed: int = 0
    quick: bool = False
    at: tuple = field(default=())

    def __post_init__(self):
        if self.samples is not None and self.samples < MIN_SAMPLES:
            raise InvalidInputError(f"--samples must be at least {MIN_SAMPLES}",
                                    samples=self.samples)
        for name in ("tol", "origin_tol", "fd_step"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise InvalidInputError(f"--{name.replace('_', '-')} must be positive",
                                        **{name: value})
        if not math.isfinite(self.tau0):
            raise InvalidInputError("--tau0 must be finite", tau0=self.tau0)


# output helpers

def _plain(obj):
    """Convert numpy containers and non-finite floats into JSON-safe Python values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps(obj) -> str:
    # float repr is the shortest string that round-trips
    return json.dumps(_plain(obj), indent=2) + "\n"


def write_json(path: Path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj))


def _cell(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def write_csv(path: Path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(x) for x in row])


# inputs

def resolve_input(name: str):
    """``builtin:NAME`` refers to a spec shipped with the package."""
    if name.startswith("builtin:"):
        ref = resources.files("isokit") / "specs" / f"{name[len('builtin:'):]}.json"
        if not ref.is_file():
            available = sorted(p.name[:-5] for p in (resources.files("isokit") / "specs").iterdir()
                               if p.name.endswith(".json"))
            raise InvalidInputError(f"no builtin spec {name!r}", available=available)
        return name[len("builtin:"):], json.loads(ref.read_text())
    path = Path(name)
    if not path.is_file():
        raise InvalidInputError(f"input file not found: {name}", path=name)
    if path.suffix.lower() == ".csv":
        return path.stem, path
    try:
        return path.stem, json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON in {name}: {exc}") from None


def build_curve(name, source, cfg: RunConfig):
    opts = dict(samples=cfg.samples, fd_order=cfg.fd_order, fd_step=cfg.fd_step)
    if isinstance(source, Path):
        return load_curve(source, kind=cfg.space, **opts)
    curve = curve_from_spec(source, kind=cfg.space, default_name=name, **opts)
    return curve


def _out_dir(cfg: RunConfig, name: str) -> Path:
    return cfg.out / name if len(cfg.inputs) > 1 else cfg.out


def _threads(n_jobs: int) -> int:
    raw = os.environ.get("ISOKIT_THREADS")
    if raw is None:
        return max(1, min(n_jobs, os.cpu_count() or 1))
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInputError("ISOKIT_THREADS must be a positive integer", value=raw) from None
    if value < 1:
        raise InvalidInputError("ISOKIT_THREADS must be a positive integer", value=raw)
    return min(value, max(1, n_jobs))


class Outcome:
    """Result of one input: files to write (in order), a summary and an exit code."""

    def __init__(self, name, code=EXIT_OK, summary=None, files=(), message=None):
        self.name, self.code, self.summary = name, code, summary or {}
        self.files, self.message = list(files), message


def _failure(name, exc: Exception, out: Path) -> Outcome:
    if isinstance(exc, (NonAdmissibleError, SpeedError)):
        payload = exc.to_dict()
        return Outcome(name, EXIT_NON_ADMISSIBLE, payload,
                       [("json", out / "admissibility.json", payload)], str(exc))
    if isinstance(exc, IsokitError):
        return Outcome(name, EXIT_ERROR, exc.to_dict(), message=str(exc))
    return Outcome(name, EXIT_ERROR, {"error": {"code": "internal", "message": str(exc),
                                                "context": {}}}, message=str(exc))


def _run_each(cfg: RunConfig, job):
    names_sources = [resolve_input(i) for i in cfg.inputs]

    def run(item):
        name, source = item
        out = _out_dir(cfg, name)
        try:
            return job(name, source, out)
        except (IsokitError, ValueError, ArithmeticError) as exc:
            return _failure(name, exc, out)

    with ThreadPoolExecutor(max_workers=_threads(len(names_sources))) as pool:
        return list(pool.map(run, names_sources))


# commands

def _frames_job(cfg: RunConfig):
    def job(name, source, out):
        curve = build_curve(name, source, cfg)
        frames = rm_frames(curve, cfg.tau0)
        rep = admissibility(curve)
        det = orientation(frames)
        summary = {
            "curve": name, "space": curve.kind.value, "samples": len(frames),
            "length": float(frames.s[-1]), "tau0": cfg.tau0, "eps": frames.eps, "eta": frames.eta,
            "kappa": {"min": float(frames.kappa.min()), "max": float(frames.kappa.max())},
            "abs_kappa": {"min": float(np.abs(frames.kappa).min()),
                          "max": float(np.abs(frames.kappa).max())},
            "tau": {"min": float(frames.tau.min()), "max": float(frames.tau.max())},
            "orientation": {"min": float(det.min()), "max": float(det.max())},
            "ode_residuals": ode_residuals(frames),
            "admissibility": rep.to_dict(),
        }
        if curve.kind.is_isotropic:
            summary["curvature_identity_residual"] = curvature_identity_residual(frames)
        table = {c: [] for c in FRAME_CSV_COLUMNS}
        rows = list(frame_rows(frames))
        for row in rows:
            for c, v in zip(FRAME_CSV_COLUMNS, row):
                table[c].append(v)
        files = [("csv", out / "frames.csv", (FRAME_CSV_COLUMNS, rows)),
                 ("json", out / "frames.json", {**summary, "frames": table})]
        return Outcome(name, EXIT_OK, summary, files)
    return job


def _classify_job(cfg: RunConfig):
    config = ClassifyConfig(tau0=cfg.tau0, tol=cfg.tol, origin_tol=cfg.origin_tol)

    def job(name, source, out):
        curve = build_curve(name, source, cfg)
        frames = rm_frames(curve, cfg.tau0)
        report = classify_frames(frames, config)
        data = {"curve": name, **report.to_json()}
        files = [("json", out / "report.json", data),
                 ("csv", out / "development.csv",
                  (["s", "kappa1", "kappa2"], list(report.development.rows())))]
        return Outcome(name, EXIT_OK, {"curve": name, "verdict": report.verdict.value}, files)
    return job


def _sphere_job(cfg: RunConfig):
    def job(name, source, out):
        if isinstance(source, dict) and "form" in source:
            if cfg.space is not None and "space" in source:
                from .spaces import SpaceKind
                if SpaceKind.parse(cfg.space) is not SpaceKind.parse(source["space"]):
                    raise SpecError("--space does not match the space declared in the sphere spec")
            sphere = Sphere.from_json(source)
            normal, motion = sphere.reduce()
            data = {"input": sphere.to_json(), "general": sphere.to_general().to_json(),
                    "type": sphere.type, "normal_form": normal.to_json(),
                    "invariant": normal.p if normal.form == "parabolic" else normal.r,
                    "motion": motion.to_json()}
            return Outcome(name, EXIT_OK, {"sphere": name, "type": sphere.type,
                                            "normal_form": data["normal_form"],
                                            "motion": data["motion"]},
                           [("json", out / "sphere.json", data)])
        curve = build_curve(name, source, cfg)
        frames = rm_frames(curve, cfg.tau0)
        length = float(frames.s[-1])
        positions = cfg.at or tuple(length * k / 6 for k in range(1, 6))
        spheres = []
        for s0 in positions:
            if not 0.0 <= s0 <= length:
                raise InvalidInputError("--at must lie in [0, curve length]", at=s0, length=length)
            i = int(np.argmin(np.abs(frames.s - s0)))
            spheres.append(osculating_sphere(frames, i).to_json())
        data = {"curve": name, "space": curve.kind.value, "length": length,
                "osculating_spheres": spheres}
        return Outcome(name, EXIT_OK, {"curve": name, "spheres": len(spheres)},
                       [("json", out / "spheres.json", data)])
    return job


def _write(outcomes):
    for o in outcomes:
        for kind, path, payload in o.files:
            if kind == "json":
                write_json(path, payload)
            else:
                header, rows = payload
                write_csv(path, header, rows)


def _report(outcomes, cfg: RunConfig) -> int:
    code = max((o.code for o in outcomes), default=EXIT_OK)
    for o in outcomes:
        if o.code != EXIT_OK:
            print(f"isokit: {o.name}: {o.message}", file=sys.stderr)
    if cfg.json:
        payload = [o.summary for o in outcomes]
        sys.stdout.write(dumps(payload[0] if len(payload) == 1 else payload))
    else:
        for o in outcomes:
            if o.code == EXIT_OK:
                print(f"{o.name}: " + ", ".join(f"{k}={v}" for k, v in o.summary.items()
                                                if not isinstance(v, dict)))
    return code


def cmd_frames(cfg: RunConfig) -> int:
    outcomes = _run_each(cfg, _frames_job(cfg))
    _write(outcomes)
    return _report(outcomes, cfg)


def cmd_classify(cfg: RunConfig) -> int:
    outcomes = _run_each(cfg, _classify_job(cfg))
    _write(outcomes)
    return _report(outcomes, cfg)


def cmd_sphere(cfg: RunConfig) -> int:
    outcomes = _run_each(cfg, _sphere_job(cfg))
    _write(outcomes)
    return _report(outcomes, cfg)


def cmd_selftest(cfg: RunConfig) -> int:
    results = run_all(seed=cfg.seed, quick=cfg.quick)
    ok = all(r.passed for r in results)
    if cfg.json:
        sys.stdout.write(dumps({"seed": cfg.seed, "quick": cfg.quick, "passed": ok,
                                "checks": [r.to_json() for r in results]}))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    if not ok:
        flags = " --quick" if cfg.quick else ""
        print(f"isokit: selftest failed; reproduce with: isokit selftest --seed {cfg.seed}{flags}",
              file=sys.stderr)
    return EXIT_OK if ok else EXIT_ERROR


COMMANDS = {"frames": cmd_frames, "classify": cmd_classify, "sphere": cmd_sphere,
            "selftest": cmd_selftest}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isokit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs=True):
        p.add_argument("--json", action="store_true", help="machine-readable stdout and errors")
        if not inputs:
            return
        p.add_argument("--input", action="append", required=True,
                       help="curve spec (.json), sampled curve (.csv) or builtin:NAME; repeatable")
        p.add_argument("--space", help="euclidean, isotropic or pseudo-isotropic")
        p.add_argument("--samples", type=int, help=f"arc-length samples (>= {MIN_SAMPLES})")
        p.add_argument("--fd-order", type=int, choices=(2, 4, 6, 8))
        p.add_argument("--fd-step", type=float)
        p.add_argument("--tau0", type=float, default=0.0, help="additive constant of theta")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")

    p = sub.add_parser("frames", help="Frenet, RM and bivector frames")
    common(p)
    p = sub.add_parser("classify", help="normal development and spherical/planar verdict")
    common(p)
    p.add_argument("--tol", type=float)
    p.add_argument("--origin-tol", type=float)
    p = sub.add_parser("sphere", help="reduce a sphere spec or compute osculating spheres")
    common(p)
    p.add_argument("--at", type=float, action="append", help="arc length of a contact point")
    p = sub.add_parser("selftest", help="run the property suite")
    common(p, inputs=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(inputs=tuple(getattr(args, "input", None) or ()),
                        space=getattr(args, "space", None), samples=getattr(args, "samples", None),
                        fd_order=getattr(args, "fd_order", None),
                        fd_step=getattr(args, "fd_step", None), tau0=getattr(args, "tau0", 0.0),
                        tol=getattr(args, "tol", None), origin_tol=getattr(args, "origin_tol", None),
                        out=getattr(args, "out", Path(".")), json=args.json,
                        seed=getattr(args, "seed", 0), quick=getattr(args, "quick", False),
                        at=tuple(getattr(args, "at", None) or ()))
        if cfg.space is not None:
            from .spaces import SpaceKind
            SpaceKind.parse(cfg.space)
        return COMMANDS[args.command](cfg)
    except IsokitError as exc:
        print(f"isokit: error: {exc}", file=sys.stderr)
        if args.json:
            sys.stdout.write(dumps(exc.to_dict()))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
