"""``kappa`` command line tool.

Examples::

    kappa --n 1 --curve "exp(z)" --at 0,0
    kappa --n 2 --curve "cos(z)" --curve "sin(z)" --at 0.3,0 --method both --check frenet,unit-det
    kappa --n 3 --curve "z^2/2" --curve "cos(z)" --curve "sin(z)" --sweep 1,0:4,0:7

Exit status: 0 when every point was computed, 2 when some point was
degenerate or failed, 1 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import expr as expr_mod
from .errors import (
    ChartEscape,
    CriticalPoint,
    DegenerateCurve,
    KappaError,
    ParseError,
)
from .expr import CurveSpec, eval_jet
from .frame import frame_scale, frenet_residual, kappa_general
from .lowdim import kappa0_n1, kappa_n2
from .transform import (
    AffineMap,
    CoordinateChange,
    apply_affine,
    random_affine,
    reparametrized_kappa,
    transform_law_n1,
    transform_law_n2,
)

METHODS = ("general", "closed-form", "both")
CHECKS = ("frenet", "invariance", "unit-det")
DEFAULT_TOL = 1e-8


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    n: int
    components: list
    points: list
    method: str = "general"
    checks: list = field(default_factory=list)
    affine: Optional[AffineMap] = None
    coords: Optional[str] = None
    output: str = "json"
    tol: float = DEFAULT_TOL
    seed: int = 0

    def validate(self):
        if self.n < 1:
            raise UsageError("--n must be at least 1")
        if len(self.components) != self.n:
            raise UsageError(f"expected {self.n} --curve expressions, got {len(self.components)}")
        if not self.points:
            raise UsageError("no evaluation points (use --at or --sweep)")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if self.method != "general" and self.n > 2:
            raise UsageError("closed-form curvatures exist only for n <= 2")
        for c in self.checks:
            if c not in CHECKS:
                raise UsageError(f"unknown check {c!r}; choose from {', '.join(CHECKS)}")
        if self.output not in ("json", "csv"):
            raise UsageError(f"unknown output format {self.output!r}")
        if self.affine is not None and self.affine.dim != self.n + 1:
            raise UsageError(f"affine map must act on C^{self.n + 1}")


# parsing helpers ------------------------------------------------------------


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"expected RE,IM but got {text!r}")


def _complex_value(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise UsageError(f"complex numbers are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return parse_complex(v)
    return complex(float(v))


def sweep_points(start: complex, end: complex, count: int) -> list:
    if count < 2:
        raise UsageError("sweep count must be at least 2")
    return [start + (end - start) * k / (count - 1) for k in range(count)]


def parse_sweep(text: str) -> list:
    try:
        a, b, c = text.split(":")
        count = int(c)
    except ValueError:
        raise UsageError(f"expected RE,IM:RE,IM:COUNT but got {text!r}") from None
    return sweep_points(parse_complex(a), parse_complex(b), count)


def load_affine(doc) -> AffineMap:
    try:
        A = [[_complex_value(v) for v in row] for row in doc["A"]]
        b = [_complex_value(v) for v in doc["b"]] if doc.get("b") is not None else None
        return AffineMap(A, b)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad affine map: {exc}") from None


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _split_checks(values):
    out = []
    for v in values or []:
        out.extend(s.strip() for s in v.split(",") if s.strip())
    return out


def job_from_document(doc: dict, base: Optional[JobSpec] = None) -> JobSpec:
    """Build a JobSpec from a JSON document; keys present override ``base``."""
    job = base or JobSpec(n=0, components=[], points=[])
    if "n" in doc:
        job.n = int(doc["n"])
    if "components" in doc:
        job.components = list(doc["components"])
    if "points" in doc:
        job.points = [_complex_value(p) for p in doc["points"]]
    if "sweep" in doc:
        sw = doc["sweep"]
        if isinstance(sw, str):
            job.points = parse_sweep(sw)
        else:
            job.points = sweep_points(_complex_value(sw["start"]), _complex_value(sw["end"]), int(sw["count"]))
    if "method" in doc:
        job.method = doc["method"]
    if "checks" in doc:
        job.checks = _split_checks(doc["checks"] if isinstance(doc["checks"], list) else [doc["checks"]])
    tr = doc.get("transform")
    if tr:
        if "affine" in tr:
            job.affine = load_affine(tr["affine"])
        if "coords" in tr:
            job.coords = tr["coords"]
    if "output" in doc:
        job.output = doc["output"]
    if "tol" in doc:
        job.tol = float(doc["tol"])
    if "seed" in doc:
        job.seed = int(doc["seed"])
    return job


# computation ----------------------------------------------------------------


def _pair(c) -> list:
    c = complex(c)
    return [c.real, c.imag]


def _rel_dev(a, b) -> float:
    return max(abs(complex(x) - complex(y)) / max(1.0, abs(complex(y))) for x, y in zip(a, b))


def _closed_form(spec: CurveSpec, a: complex) -> tuple:
    if spec.n == 1:
        return (kappa0_n1(eval_jet(spec.components[0], a, 3)),)
    x = eval_jet(spec.components[0], a, 5)
    y = eval_jet(spec.components[1], a, 5)
    return kappa_n2(x, y)


def _status(exc) -> str:
    if isinstance(exc, (DegenerateCurve, CriticalPoint)):
        return "degenerate"
    if isinstance(exc, ChartEscape):
        return "chart-escape"
    return f"error: {exc}"


def evaluate_point(job: JobSpec, spec: CurveSpec, index: int, a: complex) -> dict:
    rec = {"point": _pair(a), "status": "ok", "kappas": None, "frenet_residual": None}
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            general = kappa_general(spec, a)
        fd = general.frame
        rec["wronskian_magnitude"] = general.wronskian_magnitude
        if job.method == "general":
            kappas = general.kappas
        else:
            closed = _closed_form(spec, a)
            kappas = closed if job.method == "closed-form" else general.kappas
            if job.method == "both":
                rec["closed_form_kappas"] = [_pair(k) for k in closed]
                rec["method_deviation"] = _rel_dev(closed, general.kappas)
        residual = frenet_residual(fd, kappas)
        rec["kappas"] = [_pair(k) for k in kappas]
        rec["frenet_residual"] = residual
        if residual > 1e-7 * frame_scale(fd):
            print(f"warning: Frenet residual {residual:.3g} at z = {a}", file=sys.stderr)
        checks = {}
        for name in job.checks:
            checks[name] = _run_check(name, job, spec, index, a, general, residual)
        if checks:
            rec["checks"] = checks
        if job.affine is not None or job.coords is not None:
            rec["transform"] = _run_transform(job, spec, a, general)
    except KappaError as exc:
        rec["status"] = _status(exc)
    return rec


def _run_check(name, job, spec, index, a, general, residual):
    fd = general.frame
    if name == "frenet":
        dev = residual / frame_scale(fd)
    elif name == "unit-det":
        dev = abs(fd.frame_determinant - 1.0)
    else:
        rng = np.random.default_rng([job.seed, index])
        m = random_affine(spec.n, rng, with_offset=True)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                moved = apply_affine(spec, m, a)
        except ChartEscape:
            return {"pass": None, "deviation": None, "note": "chart-escape"}
        dev = _rel_dev(moved.kappas, general.kappas)
    return {"pass": bool(dev <= job.tol), "deviation": float(dev)}


def _run_transform(job, spec, a, general):
    out = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if job.affine is not None:
            moved = apply_affine(spec, job.affine, a)
            out["affine"] = {
                "kappas": [_pair(k) for k in moved.kappas],
                "deviation": _rel_dev(moved.kappas, general.kappas),
            }
        if job.coords is not None:
            cc = CoordinateChange(job.coords, a)
            z = cc.jet(0).value
            direct = reparametrized_kappa(spec, cc)
            block = {"w": _pair(a), "z": _pair(z), "kappas": [_pair(k) for k in direct.kappas]}
            if spec.n <= 2:
                at_z = kappa_general(spec, z).kappas
                law = (transform_law_n1(at_z[0], cc),) if spec.n == 1 else transform_law_n2(at_z, cc)
                block["law_kappas"] = [_pair(k) for k in law]
                block["deviation"] = _rel_dev(direct.kappas, law)
            out["coords"] = block
    return out


def run_job(job: JobSpec) -> dict:
    job.validate()
    try:
        spec = CurveSpec(job.n, tuple(job.components))
        if job.coords is not None:
            expr_mod.parse(job.coords)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}") from None
    records = [evaluate_point(job, spec, i, a) for i, a in enumerate(job.points)]
    return {
        "n": job.n,
        "components": list(job.components),
        "method": job.method,
        "records": records,
    }


# output ---------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x}")
    s = "%.17g" % x
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


def dump_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dump_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if all(isinstance(v, (int, float, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dump_json(v) for v in obj) + "]"
        items = [pad + dump_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dump_csv(result: dict) -> str:
    n = result["n"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["point_re", "point_im"]
    for j in range(n):
        header += [f"kappa{j}_re", f"kappa{j}_im"]
    w.writerow(header + ["frenet_residual", "status"])
    for rec in result["records"]:
        row = [_fmt_float(v) for v in rec["point"]]
        if rec["kappas"] is None:
            row += [""] * (2 * n) + [""]
        else:
            row += [_fmt_float(v) for k in rec["kappas"] for v in k]
            row.append(_fmt_float(rec["frenet_residual"]))
        row.append(rec["status"])
        w.writerow(row)
    return buf.getvalue()


# entry point ----------------------------------------------------------------

GRAMMAR_HELP = """\
expression grammar:
  expr   := term (('+'|'-') term)*
  term   := factor (('*'|'/') factor)*
  factor := '-' factor | atom ('^' ['-'] INT)?
  atom   := NUMBER['i'] | 'i' | 'pi' | 'e' | 'z' | FUNC '(' expr ')' | '(' expr ')'
  FUNC   := exp | sin | cos | sqrt
negative points need '=': --at=-1,0
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n{GRAMMAR_HELP}")
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="kappa",
        description="Schwarzian curvatures of analytic curves in CP^n.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--n", type=int, help="projective dimension")
    p.add_argument("--curve", action="append", default=[], metavar="EXPR",
                   help="inhomogeneous coordinate x_k(z); repeat n times")
    p.add_argument("--at", action="append", default=[], metavar="RE,IM", help="evaluation point (repeatable)")
    p.add_argument("--sweep", metavar="RE,IM:RE,IM:COUNT", help="straight-line sweep of points")
    p.add_argument("--method", choices=METHODS, default=None)
    p.add_argument("--check", action="append", default=[], metavar="LIST",
                   help="comma separated: frenet, invariance, unit-det")
    p.add_argument("--transform-affine", metavar="FILE", help='JSON {"A": [[...]], "b": [...]}')
    p.add_argument("--transform-coords", metavar="EXPR", help="coordinate change z = z(w), written in z")
    p.add_argument("--output", choices=("json", "csv"), default=None)
    p.add_argument("--tol", type=float, default=None, help=f"check tolerance (default {DEFAULT_TOL:g})")
    p.add_argument("--spec", metavar="FILE", help="JobSpec JSON document; overrides flags")
    return p


def job_from_args(args) -> JobSpec:
    points = [parse_complex(s) for s in args.at]
    if args.sweep:
        points += parse_sweep(args.sweep)
    seed = os.environ.get("KAPPA_SEED", "0")
    try:
        seed = int(seed)
    except ValueError:
        raise UsageError(f"KAPPA_SEED must be an integer, got {seed!r}") from None
    job = JobSpec(
        n=args.n if args.n is not None else len(args.curve),
        components=list(args.curve),
        points=points,
        method=args.method or "general",
        checks=_split_checks(args.check),
        output=args.output or ("csv" if args.sweep else "json"),
        tol=args.tol if args.tol is not None else DEFAULT_TOL,
        seed=seed,
        coords=args.transform_coords,
    )
    if args.transform_affine:
        job.affine = load_affine(_read_json(args.transform_affine))
    if args.spec:
        job = job_from_document(_read_json(args.spec), job)
    return job


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
        result = run_job(job)
    except UsageError as exc:
        print(f"kappa: {exc}", file=sys.stderr)
        if "parse error" in str(exc):
            print(GRAMMAR_HELP, file=sys.stderr, end="")
        return 1
    text = dump_json(result) + "\n" if job.output == "json" else dump_csv(result)
    stdout.write(text)
    bad = [r for r in result["records"] if r["status"] != "ok"]
    for r in bad:
        print(f"point {r['point']}: {r['status']}", file=sys.stderr)
    return 2 if bad else 0


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
