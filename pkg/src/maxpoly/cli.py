"""Command-line front end.

Every subcommand builds a ReportDocument: a JSON-ready dict of inputs,
results and diagnostics. ``results["records"]`` is the tabular view that
the csv and text formats print, one row per record.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__, construct, formulas, geomkit
from .errors import DomainError
from .oracle import SearchConfig, search_max_area_polygon, search_max_volume_3d, verify_projection_monotonicity
from .pentagon import TAGS, CapMatrix, best_area, case_e_scan, case_max
from .pentagon.cases import CASE_CONFIG

SCHEMA_VERSION = "1"
SIG_DIGITS = 12
FORMATS = ("text", "json", "csv")
RANDOMIZED = {"cases", "search", "verify"}


class UsageError(DomainError):
    """Bad flag combination detected after argparse accepted the syntax."""


def _num(v: float):
    if not math.isfinite(v):
        return None
    return float(f"{v:.{SIG_DIGITS}g}")


def clean(obj):
    """Convert to plain JSON types, rounding floats to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


@dataclass
class ReportDocument:
    subcommand: str
    inputs: dict
    results: dict
    diagnostics: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def as_dict(self) -> dict:
        return {
            "schemaVersion": self.schema_version,
            "subcommand": self.subcommand,
            "inputs": clean(self.inputs),
            "results": clean(self.results),
            "diagnostics": clean(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        return cls(d["subcommand"], d["inputs"], d["results"], d["diagnostics"], d["schemaVersion"])


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def emit(report: ReportDocument, fmt: str = "text") -> str:
    doc = report.as_dict()
    if fmt == "json":
        return json.dumps(doc, ensure_ascii=False) + "\n"
    records = doc["results"].get("records", [])
    header = list(dict.fromkeys(k for rec in records for k in rec))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for rec in records:
            w.writerow([_fmt(rec.get(k)) for k in header])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"{doc['subcommand']}"]
    scalars = {k: v for k, v in doc["results"].items() if k != "records" and not isinstance(v, (list, dict))}
    width = max((len(k) for k in scalars), default=0)
    lines += [f"  {k.ljust(width)}  {_fmt(v)}" for k, v in scalars.items()]
    if records:
        rows = [header] + [[_fmt(rec.get(k)) for k in header] for rec in records]
        widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
        lines.append("")
        for r in rows:
            lines.append("  " + "  ".join(cell.rjust(wd) for cell, wd in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


# -- subcommands ---------------------------------------------------------------


def _cfg(args, base: SearchConfig) -> SearchConfig:
    changes = {"seed": args.seed if args.seed is not None else base.seed}
    if getattr(args, "starts", None) is not None:
        changes["starts"] = args.starts
    if getattr(args, "inner", None) is not None:
        changes["inner_iterations"] = args.inner
    if getattr(args, "workers", None) is not None:
        changes["workers"] = args.workers
    return base.with_(**changes)


def _point_records(points, labels=None) -> list[dict]:
    pts = np.asarray(points, float)
    labels = labels or [f"P{i + 1}" for i in range(len(pts))]
    axes = "xyz" if pts.shape[1] <= 3 else [f"x{i + 1}" for i in range(pts.shape[1])]
    return [{"label": lab, **{a: float(c) for a, c in zip(axes, row)}} for lab, row in zip(labels, pts)]


def cmd_volume(args):
    res = formulas.volume(args.n, args.k)
    rec = res.as_dict()
    return {"n": args.n, "k": args.k}, {**rec, "records": [rec]}, {}


def cmd_pentagon(args):
    sol = best_area(args.r, args.x)
    d = sol.as_dict()
    results = {k: d[k] for k in ("r", "x", "y", "z", "area")}
    results["points"] = d["points"]
    results["tightPairs"] = d["tightPairs"]
    results["records"] = _point_records(sol.points, list(d["points"]))
    return {"r": args.r, "x": args.x}, results, {"bisectionWidth": 1e-13}


def cmd_cases(args):
    cfg = _cfg(args, CASE_CONFIG)
    tags = TAGS if args.case == "all" else (args.case,)
    fstar = best_area(args.r).area
    records = []
    best_pts = {}
    for tag in tags:
        area, pts, apex = case_max(tag, args.r, cfg)
        records.append({"case": tag, "area": area, "apex": apex, "gapToF": fstar - area})
        best_pts[tag] = pts
    results = {"r": args.r, "fStar": fstar, "records": records}
    if len(tags) == 1:
        results["points"] = best_pts[tags[0]]
    if args.scan:
        scan = case_e_scan(args.r, starts=args.scan_starts, seed=cfg.seed)
        results["caseEScan"] = {k: v for k, v in scan.as_dict().items() if k != "r"}
    inputs = {"case": args.case, "r": args.r, "scan": args.scan}
    return inputs, results, {"searchConfig": cfg.as_dict()}


def cmd_construct(args):
    if (args.n is None) == (args.h is None):
        raise UsageError("construct needs exactly one of --n or --h")
    spec = construct.build_pyramidal_3d(args.h) if args.h is not None else construct.build_optimal(args.n)
    d = spec.as_dict()
    pts = spec.vertices.points
    results = {"n": spec.n, "typeTag": spec.type_tag, "claimedVolume": spec.claimed_volume,
               "diameter": geomkit.diameter(pts)}
    if spec.n == 3:
        vol, mesh = geomkit.hull_volume_3d(pts)
        results["hullVolume"] = vol
        results["faces"] = len(mesh.facets)
        results["edges"] = len(mesh.edges)
    else:
        results["constructionVolume"] = construct.construction_volume(spec.n)
    results["records"] = [{"label": v["label"], **{f"x{i + 1}": c for i, c in enumerate(v["coords"])}}
                          for v in d["vertices"]]
    return {"n": args.n, "h": args.h}, results, {}


def cmd_search(args):
    cfg = _cfg(args, SearchConfig())
    inputs = {"mode": args.mode, "k": args.k, "points": args.points, "caps": args.caps,
              "starts": cfg.starts, "seed": cfg.seed}
    if args.mode == "polygon":
        if args.caps is not None:
            try:
                caps = CapMatrix.read(args.caps)
            except OSError as exc:
                raise UsageError(f"cannot read cap file: {exc}") from None
        elif args.k is not None:
            caps = CapMatrix.uniform(args.k)
        else:
            raise UsageError("polygon mode needs --k or --caps")
        res = search_max_area_polygon(caps.caps, cfg)
    else:
        if args.points is None:
            raise UsageError("polytope3d mode needs --points")
        res = search_max_volume_3d(args.points, cfg)
    d = res.as_dict()
    results = {"bestValue": d["bestValue"], "feasible": d["feasible"], "maxViolation": d["maxViolation"],
               "perStartValues": d["perStartValues"], "records": _point_records(res.best_points)}
    diagnostics = {"evaluations": d["evaluations"], "feasibilityTolerance": 1e-9,
                   "searchConfig": cfg.as_dict()}
    return inputs, results, diagnostics


def cmd_counts(args):
    if args.trackleations == args.bender_wormald:
        raise UsageError("counts needs exactly one of --trackleations or --bender-wormald")
    if args.trackleations:
        if args.m is None:
            raise UsageError("--trackleations needs --m")
        res, inputs = formulas.trackleation_count(args.m), {"trackleations": True, "m": args.m}
    else:
        if args.k is None:
            raise UsageError("--bender-wormald needs --k")
        res, inputs = formulas.bender_wormald(args.k), {"benderWormald": True, "k": args.k}
    rec = res.as_dict()
    rec["exact"] = str(res.value)
    return inputs, {"value": rec["exact"], "isInteger": res.is_integer, "records": [rec]}, {}


def cmd_limits(args):
    r1, r2 = formulas.limit_ratios(args.n)
    rec = {"n": args.n, "ratio1": r1, "ratio2": r2, "limit1": 1.0,
           "limit2": best_area(formulas.r_of_n(math.inf)).area}
    return {"n": args.n}, {**rec, "records": [rec]}, {}


def cmd_verify(args):
    if args.projection == args.h_sweep:
        raise UsageError("verify needs exactly one of --projection or --h-sweep")
    if args.projection:
        cfg = SearchConfig(seed=args.seed or 0)
        rep = verify_projection_monotonicity(args.trials, cfg).as_dict()
        return {"projection": True, "trials": args.trials, "seed": cfg.seed}, {**rep, "records": [rep]}, {
            "volumeTolerance": 1e-9}
    sweep = formulas.v36_h_sweep(args.grid)
    d = sweep.as_dict()
    results = {"argmax": d["argmax"], "maximum": d["maximum"], "records": d["profile"]}
    return {"hSweep": True, "grid": args.grid}, results, {"goldenSectionTolerance": 1e-12}


HANDLERS = {
    "volume": cmd_volume,
    "pentagon": cmd_pentagon,
    "cases": cmd_cases,
    "construct": cmd_construct,
    "search": cmd_search,
    "counts": cmd_counts,
    "limits": cmd_limits,
    "verify": cmd_verify,
}


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="output format (default: text)")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=_seed, help="64-bit unsigned seed")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--starts", type=_positive_int, help="number of random starts")
    budget.add_argument("--inner", type=_positive_int, help="iteration cap per penalty round")
    budget.add_argument("--workers", type=_positive_int, help="worker processes")

    p = argparse.ArgumentParser(prog="maxpoly", description="Maximal volumes of unit-diameter polytopes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("volume", parents=[common], help="closed-form V(n, k)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("pentagon", parents=[common], help="optimal symmetric pentagon for apex cap r")
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--x", type=float, help="evaluate at this x instead of the optimum")

    s = sub.add_parser("cases", parents=[common, seeded, budget], help="best pentagon per diameter graph")
    s.add_argument("--case", type=str.upper, choices=[*TAGS, "ALL"], required=True)
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--scan", action="store_true", help="also scan the case (e) angle parameterisation")
    s.add_argument("--scan-starts", type=_positive_int, default=64)

    s = sub.add_parser("construct", parents=[common], help="vertex coordinates of the optimal polytope")
    s.add_argument("--n", type=int)
    s.add_argument("--h", type=float, help="3D pyramidal construction with apex distance h")

    s = sub.add_parser("search", parents=[common, seeded, budget], help="multistart oracle search")
    s.add_argument("--mode", choices=("polygon", "polytope3d"), required=True)
    s.add_argument("--k", type=int, help="polygon vertex count with unit caps")
    s.add_argument("--caps", help="cap-matrix file: k, then k rows of k values")
    s.add_argument("--points", type=int, help="point count for polytope3d")

    s = sub.add_parser("counts", parents=[common], help="counting formulas")
    s.add_argument("--trackleations", action="store_true")
    s.add_argument("--bender-wormald", action="store_true")
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)

    s = sub.add_parser("limits", parents=[common], help="n V(n,n+2)/V(n-1,n) and n V(n,n+3)/V(n-2,n-1)")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("verify", parents=[common, seeded], help="projection check or the n = 3 height sweep")
    s.add_argument("--projection", action="store_true")
    s.add_argument("--trials", type=_positive_int, default=1000)
    s.add_argument("--h-sweep", action="store_true")
    s.add_argument("--grid", type=_positive_int, default=101)
    return p


def _needs_seed(args) -> bool:
    if args.subcommand == "verify":
        return args.projection
    return args.subcommand in RANDOMIZED


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.subcommand == "cases" and args.case == "ALL":
        args.case = "all"
    if os.environ.get("MAXPOLY_CI") == "1" and _needs_seed(args) and args.seed is None:
        print(f"maxpoly {args.subcommand}: --seed is required when MAXPOLY_CI=1", file=stderr)
        return 2
    try:
        inputs, results, diagnostics = HANDLERS[args.subcommand](args)
    except DomainError as exc:
        print(f"maxpoly {args.subcommand}: {exc}", file=stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - report and exit 1
        print(f"maxpoly {args.subcommand}: internal error: {exc!r}", file=stderr)
        return 1
    inputs["format"] = args.format
    report = ReportDocument(args.subcommand, inputs, results, diagnostics)
    stdout.write(emit(report, args.format))
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
