"""Command-line front end.

    cyclorad radius 1 2 4 5 5
    cyclorad roots 29 30 31 32 33 --signs=-1,1,1,1,1
    cyclorad area 1x4 3x7 4 6 --json
    cyclorad regular --n 200 --l 1
    cyclorad poly --regular 7
    cyclorad render 5x5 --signs=+++++ --winding 2 --out star.svg
    cyclorad --batch jobs.jsonl

Exit codes: 0 success, 2 invalid input, 3 no admissible root, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import __version__
from .area import area_integral, area_sum, criteria, triangle_area
from .closed_forms import radius_regular
from .core import RESIDUAL_TOL, TWO_PI, Signature, classify_a_priori, validate_sides
from .errors import CycloradError, NoRoot, ParseError
from .polynomial import radius_polynomial, regular_polynomial
from .solver import all_positive_roots, select_convex_root, solve_radius_convex, solve_radius_signed
from .verify import reconstruct_vertices, render_svg, shoelace_area

log = logging.getLogger("cyclorad")

COMMANDS = ("radius", "roots", "area", "classify", "poly", "regular", "verify", "render")
TOL_ENV = "CYCLORAD_TOL"

_REPEAT = re.compile(r"^([^x]+)x(\d+)$")


@dataclass
class JobSpec:
    command: str
    sides: list[float] = field(default_factory=list)
    signs: list[int] | None = None
    winding: int | None = None
    n: int | None = None
    l: float | None = None
    q: int = 1
    r: float | None = None
    form: str = "full"
    tol: float | None = None
    json: bool = False
    out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if self.command == "regular" and (self.n is None or self.l is None):
            raise ParseError("regular needs --n and --l")
        if self.command == "poly" and self.n is None and not self.sides:
            raise ParseError("poly needs side lengths or --regular N")
        if self.command not in ("regular", "poly") and not self.sides:
            raise ParseError(f"{self.command} needs side lengths")
        if self.signs is not None and self.sides and len(self.signs) != len(self.sides):
            raise ParseError(f"{len(self.signs)} signs given for {len(self.sides)} sides")

    def signature(self) -> Signature | None:
        if self.signs is None:
            return None if self.winding is None else Signature.convex(len(self.sides), self.winding)
        return Signature(tuple(self.signs), 1 if self.winding is None else self.winding)


def parse_number(tok: str) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok!r}") from None
    if not math.isfinite(v):
        raise ParseError(f"not a finite number: {tok!r}")
    return v


def parse_sides(tokens: Sequence) -> list[float]:
    """Comma/space separated lengths; ``3x7`` stands for seven sides of length 3."""
    out: list[float] = []
    for item in tokens:
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            out.append(float(item))
            continue
        for tok in re.split(r"[,\s]+", str(item).strip()):
            if not tok:
                continue
            m = _REPEAT.match(tok)
            if m:
                count = int(m.group(2))
                if count < 1:
                    raise ParseError(f"repeat count must be positive in {tok!r}")
                out.extend([parse_number(m.group(1))] * count)
            else:
                out.append(parse_number(tok))
    return out


def parse_signs(spec) -> list[int]:
    if isinstance(spec, (list, tuple)):
        vals = list(spec)
    else:
        s = str(spec).strip()
        if re.fullmatch(r"[+-]+", s):
            return [1 if ch == "+" else -1 for ch in s]
        vals = [t for t in re.split(r"[,\s]+", s) if t]
    out = []
    for v in vals:
        try:
            k = int(v)
        except (TypeError, ValueError):
            raise ParseError(f"bad sign {v!r}") from None
        if k not in (1, -1):
            raise ParseError(f"signs must be +1 or -1, got {v!r}")
        out.append(k)
    return out


def job_from_dict(d: dict, command: str | None = None) -> JobSpec:
    if not isinstance(d, dict):
        raise ParseError("a job must be a JSON object")
    cmd = d.get("command", command)
    if cmd is None:
        raise ParseError("job has no command")
    try:
        return JobSpec(
            command=cmd,
            sides=parse_sides(d.get("sides", [])),
            signs=None if d.get("signs") is None else parse_signs(d["signs"]),
            winding=None if d.get("winding") is None else int(d["winding"]),
            n=None if d.get("n") is None else int(d["n"]),
            l=None if d.get("l") is None else float(d["l"]),
            q=int(d.get("q", 1)),
            r=None if d.get("r") is None else float(d["r"]),
            form=d.get("form", "full"),
            tol=None if d.get("tol") is None else float(d["tol"]),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad job field: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--input", metavar="FILE", help="read the job from a JSON file")
    common.add_argument("--tol", type=float, help="angle residual tolerance")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    sides = argparse.ArgumentParser(add_help=False)
    sides.add_argument("sides", nargs="*", help="side lengths; 3x7 repeats 3 seven times")

    sig = argparse.ArgumentParser(add_help=False)
    sig.add_argument("--signs", help="per-side directions, e.g. --signs=-1,1,1,1,1 or --signs=-++++")
    sig.add_argument("--winding", type=int, help="winding number E (default 1)")

    p = argparse.ArgumentParser(prog="cyclorad", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"cyclorad {__version__}")
    p.add_argument("--batch", metavar="FILE", help="JSONL file with one job per line")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command")

    sub.add_parser("radius", parents=[common, sides], help="convex circumradius")
    sub.add_parser("roots", parents=[common, sides, sig], help="all candidate radii")
    sub.add_parser("area", parents=[common, sides], help="area by both routes")
    sub.add_parser("classify", parents=[common, sides], help="centre position and criteria")
    sp = sub.add_parser("poly", parents=[common, sides], help="exact radius polynomial")
    sp.add_argument("--regular", type=int, metavar="N", help="regular N-gon via Chebyshev")
    sp.add_argument("--l", type=float, default=1.0, help="side length for --regular")
    sp.add_argument("--form", choices=("full", "split"), default="full")
    rp = sub.add_parser("regular", parents=[common], help="regular {n/q} polygon")
    rp.add_argument("--n", type=int, required=False)
    rp.add_argument("--l", type=float, required=False)
    rp.add_argument("--q", type=int, default=1)
    for name in ("verify", "render"):
        vp = sub.add_parser(name, parents=[common, sides, sig], help=f"{name} the reconstruction")
        vp.add_argument("--r", type=float, help="radius to use instead of solving")
    return p


def parse_input(argv: Sequence[str] | None = None) -> JobSpec:
    ns = build_parser().parse_args(argv)
    if ns.command is None:
        raise ParseError("no command given")
    return _job_from_namespace(ns)


def _job_from_namespace(ns) -> JobSpec:
    if getattr(ns, "input", None):
        try:
            with open(ns.input, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read {ns.input}: {exc}") from None
        job = job_from_dict(data, ns.command)
        if getattr(ns, "sides", None):
            job.sides = parse_sides(ns.sides)
    else:
        n = getattr(ns, "n", None)
        if ns.command == "poly":
            n = ns.regular
        job = JobSpec(
            command=ns.command,
            sides=parse_sides(getattr(ns, "sides", []) or []),
            signs=None if getattr(ns, "signs", None) is None else parse_signs(ns.signs),
            winding=getattr(ns, "winding", None),
            n=n,
            l=getattr(ns, "l", None),
            q=getattr(ns, "q", 1),
            r=getattr(ns, "r", None),
            form=getattr(ns, "form", "full"),
        )
    if ns.tol is not None:
        job.tol = ns.tol
    job.json = ns.json
    job.out = ns.out
    return job


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if not raw:
        return RESIDUAL_TOL
    try:
        return float(raw)
    except ValueError:
        raise ParseError(f"{TOL_ENV}={raw!r} is not a number") from None


def run(job: JobSpec) -> dict[str, Any]:
    """Execute a job and return its JSON-ready report."""
    tol = job.tol if job.tol is not None else default_tol()
    handler = _HANDLERS[job.command]
    report: dict[str, Any] = {"command": job.command, "status": "ok"}
    report.update(handler(job, tol))
    return report


def _radius(job, tol):
    sides = validate_sides(job.sides)
    sol = solve_radius_convex(sides, tol=tol)
    return {
        "sides": list(sides),
        "radius": sol.r,
        "classification": sol.classification.to_dict(),
        "branch": sol.branch,
        "residual": sol.residual,
        "equation_value": sol.equation_value,
        "perimeter": sides.perimeter,
        "two_pi_r": TWO_PI * sol.r,
    }


def _roots(job, tol):
    sides = validate_sides(job.sides)
    sig = job.signature() if job.signs is not None else None
    if sig is not None:
        rs = solve_radius_signed(sides, sig, tol=tol)
        selected = None
    else:
        rs = all_positive_roots(sides, tol=tol)
        selected = select_convex_root(rs, sides.perimeter).r if rs.roots else None
    out = {"sides": list(sides)}
    if sig is not None:
        out["signature"] = sig.to_dict()
    out.update(rs.to_dict())
    out["selected"] = selected
    if not rs.roots:
        out["status"] = "no_root"
    return out


def _area(job, tol):
    sides = validate_sides(job.sides)
    sol = solve_radius_convex(sides, tol=tol)
    a_sum = area_sum(sides, sol.r, sol.classification)
    a_int = area_integral(sides, sol.r, sol.classification)
    return {
        "sides": list(sides),
        "radius": sol.r,
        "classification": sol.classification.to_dict(),
        "criteria": criteria(sides, sol.r).to_dict(),
        "area_sum": a_sum.total,
        "area_integral": a_int.total,
        "relative_difference": abs(a_sum.total - a_int.total) / a_sum.total,
        "disc_area": math.pi * sol.r ** 2,
    }


def _classify(job, tol):
    sides = validate_sides(job.sides)
    cls = classify_a_priori(sides)
    sol = solve_radius_convex(sides, tol=tol)
    return {
        "sides": list(sides),
        "classification": cls.to_dict(),
        "theta": cls.theta,
        "radius": sol.r,
        "criteria": criteria(sides, sol.r).to_dict(),
    }


def _poly(job, tol):
    if job.n is not None:
        fp = regular_polynomial(job.n, 1.0 if job.l is None else job.l, job.form)
        return {"regular": job.n, "form": job.form, "polynomial": fp.to_dict()}
    sides = validate_sides(job.sides)
    p = radius_polynomial(list(sides))
    d = p.to_dict()
    d["factors"] = []
    return {"sides": list(sides), "polynomial": d}


def _regular(job, tol):
    r = radius_regular(job.n, job.l, job.q)
    perim = job.n * job.l
    out = {
        "n": job.n,
        "l": job.l,
        "q": job.q,
        "radius": r,
        "perimeter": perim,
        "two_pi_r": TWO_PI * r,
        "circumference_excess": TWO_PI * r - perim,
        "disc_area": math.pi * r * r,
    }
    if job.q == 1:
        out["area"] = job.n * triangle_area(job.l, r)
    return out


def _reconstruction(job, tol):
    sides = validate_sides(job.sides)
    sig = job.signature()
    if job.r is not None:
        r = job.r
    elif sig is not None:
        rs = solve_radius_signed(sides, sig, tol=tol)
        if not rs.roots:
            raise NoRoot("the signed equation has no root")
        r = rs.roots[0].r
    else:
        r = solve_radius_convex(sides, tol=tol).r
    how = sig if sig is not None else classify_a_priori(sides)
    return sides, r, reconstruct_vertices(sides, r, how)


def _verify(job, tol):
    sides, r, rec = _reconstruction(job, tol)
    out = {"sides": list(sides), "radius": r}
    out.update(rec.to_dict())
    out["max_side_error"] = max(rec.side_errors)
    out["closed"] = rec.closure_error <= 1e-9 * r
    out["shoelace_area"] = shoelace_area(rec) if rec.closure_error <= 1e-6 * r else None
    return out


def _render(job, tol):
    sides, r, rec = _reconstruction(job, tol)
    svg = render_svg(rec, r)
    out = {"sides": list(sides), "radius": r}
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        out["path"] = job.out
    else:
        out["svg"] = svg
    return out


_HANDLERS = {
    "radius": _radius,
    "roots": _roots,
    "area": _area,
    "classify": _classify,
    "poly": _poly,
    "regular": _regular,
    "verify": _verify,
    "render": _render,
}


def exit_code(report: dict) -> int:
    status = report.get("status")
    if status == "ok":
        return 0
    if status == "no_root":
        return NoRoot.exit_code
    return report.get("error", {}).get("exit_code", 1)


def error_report(command: str | None, exc: CycloradError) -> dict:
    return {
        "command": command,
        "status": "error",
        "error": {"type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code},
    }


def dumps(report: dict) -> str:
    return json.dumps(report, ensure_ascii=False, allow_nan=False)


def _g(x, digits=6):
    return f"{x:.{digits}g}"


def format_text(report: dict) -> str:
    cmd = report["command"]
    if report["status"] == "error":
        e = report["error"]
        return f"error ({e['type']}): {e['message']}"
    lines = []
    if cmd == "radius":
        lines += [
            f"r = {report['radius']!r}",
            f"classification: {report['classification']['kind']}",
            f"2*pi*r = {report['two_pi_r']!r}  (perimeter {report['perimeter']!r})",
            f"angle residual: {report['equation_value']:.3e}",
        ]
    elif cmd == "roots":
        for s in report["roots"]:
            lines.append(f"r = {s['r']!r}  E={s['winding']}  {s['branch']}")
        for rej in report["rejected"]:
            lines.append(f"rejected r = {rej['r']!r}: {rej['reason']}")
        lines += [f"note: {n}" for n in report["notes"]]
        if report.get("selected") is not None:
            lines.append(f"convex radius: {report['selected']!r}")
        if not report["roots"]:
            lines.append("no root")
    elif cmd in ("area", "classify"):
        c = report["criteria"]
        c1 = c["criterion1"]
        verdict = "PNCI" if c1["satisfied"] else "PCI"
        lines.append(f"r = {report['radius']!r}")
        lines.append(f"classification: {report['classification']['kind']}")
        if cmd == "area":
            lines.append(f"area (triangle sum) = {report['area_sum']!r}")
            lines.append(f"area (segments)     = {report['area_integral']!r}")
        lines.append(f"criterion 1: {_g(c1['lhs'])} vs {_g(c1['rhs'])} ⇒ {verdict}")
        if c["criterion2"] is not None:
            c2 = c["criterion2"]
            lines.append(f"criterion 2: {_g(c2['lhs'])} vs {_g(c2['rhs'])} (satisfied: {c2['satisfied']})")
        if c["criterion3"] is not None:
            c3 = c["criterion3"]
            lines.append(
                "criterion 3 ratios: " + ", ".join(_g(x) for x in c3["ratios"])
                + f" (all < 1, necessary for PNCI: {c3['satisfied']})"
            )
    elif cmd == "poly":
        p = report["polynomial"]
        lines.append("coefficients of r^2 (ascending): " + " ".join(p["coefficients"]))
        for f in p.get("factors", []):
            lines.append(
                f"factor^{f['multiplicity']} [{f.get('label', '')}]: " + " ".join(f["coefficients"])
            )
    elif cmd == "regular":
        lines.append(f"r = {report['radius']!r}")
        lines.append(f"2πr − P = {report['circumference_excess']:.3f}")
        if "area" in report:
            lines.append(f"area = {report['area']!r}  (disc {report['disc_area']!r})")
    elif cmd == "verify":
        lines += [
            f"r = {report['radius']!r}",
            f"closure error = {report['closure_error']:.3e}",
            f"max side error = {report['max_side_error']:.3e}",
            f"closed: {report['closed']}",
        ]
        if report["shoelace_area"] is not None:
            lines.append(f"shoelace area = {report['shoelace_area']!r}")
    elif cmd == "render":
        return report["svg"] if "svg" in report else f"wrote {report['path']}"
    return "\n".join(lines)


def run_safe(job: JobSpec) -> dict:
    try:
        return run(job)
    except CycloradError as exc:
        return error_report(job.command, exc)


def run_batch(path: str) -> tuple[list[str], int]:
    lines_out = []
    worst = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                job = job_from_dict(json.loads(line))
            except json.JSONDecodeError as exc:
                report = error_report(None, ParseError(f"line {lineno}: {exc}"))
            except CycloradError as exc:
                report = error_report(None, exc)
            else:
                report = run_safe(job)
            lines_out.append(dumps(report))
            worst = max(worst, exit_code(report))
    return lines_out, worst


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING)
    if ns.batch:
        try:
            lines, code = run_batch(ns.batch)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print("\n".join(lines))
        return code
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        job = _job_from_namespace(ns)
    except CycloradError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    report = run_safe(job)
    code = exit_code(report)
    text = dumps(report) if job.json else format_text(report)
    if job.out and job.command != "render":
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        stream = sys.stderr if report["status"] == "error" and not job.json else sys.stdout
        print(text, file=stream)
    return code
