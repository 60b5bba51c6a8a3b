"""Command-line front end.

Exit codes: 0 success, 1 malformed JSON input, 2 unsupported range,
3 enumeration bounds too small, 4 invalid arguments, 5 internal invariant
violated.  Numbers are printed exactly; the only decimal is the cosmetic
"≈" next to a Seshadri constant.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from .errors import BoundsError, InvariantError, StructuralError, UnsupportedRangeError
from .lattice import DivClass, PointConfig, SurfaceModel
from .linsys import LinSysSpec, ScanGrid, analyse, conjecture_scan, default_grid
from .negcurves import (EnumBounds, candidate_filter, effectivity_heuristic, enumerate_neg_classes,
                        family_of, resolve_bounds, structural_filter)
from .positivity import ample_verdict, is_ample_closed_form, nef_verdict
from .seshadri import XPosition, seshadri

EXIT_OK, EXIT_JSON, EXIT_RANGE, EXIT_BOUNDS, EXIT_ARGS, EXIT_INVARIANT = range(6)

GOLDEN_VERSION = "v1"
GOLDEN_CASES = {
    "seshadri_f36": ["seshadri", "--e", "3", "--r", "6", "--L", "6,19,4,4,4,4,4,4"],
    "seshadri_f13": ["seshadri", "--e", "1", "--r", "3", "--L", "3,5,2,2,2"],
    "seshadri_f11": ["seshadri", "--e", "1", "--r", "1", "--L", "3,4,2"],
    "enumerate_f36x_candidates": ["enumerate", "--e", "3", "--r", "6", "--with-x", "--filter", "candidates"],
    "ample_f13": ["ample", "--e", "1", "--r", "3", "--L", "3,5,2,2,2"],
    "nef_f20_fiber": ["nef", "--e", "2", "--r", "0", "--D", "0,1"],
    "linsys_f3_3_9": ["linsys", "--e", "3", "--spec", "3,9,2,2,2,2,2,2"],
}


class JSONInputError(Exception):
    pass


class ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ARGS)


def load_json(text: str, what: str):
    """Parse JSON from a literal or a file path; bad JSON reports line and column."""
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JSONInputError(f"malformed JSON in {what}: {exc.msg} at line {exc.lineno}, column {exc.colno}")


def parse_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ArgError(f"expected comma-separated integers, got {text!r}")


def surface_from_args(args) -> SurfaceModel:
    pts = args.points
    if pts in ("very_general", "very-general"):
        config = PointConfig()
    elif pts == "generic":
        config = PointConfig.generic(args.r)
    else:
        config = PointConfig.from_json(load_json(pts, "--points"))
    return SurfaceModel(args.e, args.r, config, getattr(args, "with_x", False))


def class_from_text(text: str, S: SurfaceModel) -> DivClass:
    """'a,b,m1..mr' (plus ';mx' when the surface has x)."""
    head, _, tail = text.partition(";")
    vals = parse_ints(head)
    if len(vals) < 2:
        raise ArgError("a class needs at least a,b")
    m = vals[2:]
    if not m:
        m = [0] * S.r
    if len(m) != S.r:
        raise ArgError(f"class has {len(m)} multiplicities, surface has r = {S.r}")
    mx = int(tail) if tail.strip() else (0 if S.with_x else None)
    if mx is not None and not S.with_x:
        raise ArgError("';mx' given but the surface has no x (use --with-x)")
    return DivClass(vals[0], vals[1], tuple(m), mx)


def bounds_from_args(args) -> EnumBounds:
    try:
        return EnumBounds.parse(args.bounds)
    except ValueError:
        raise ArgError(f"--bounds must be 'auto' or 'a,b,m', got {args.bounds!r}")


# -- commands ---------------------------------------------------------------------

def cmd_ample(args):
    S = surface_from_args(args)
    L = class_from_text(args.L, S)
    v = ample_verdict(L, S)
    out = {"surface": S.to_json(), "class": L.to_csv(), **v.to_json()}
    try:
        out["closed_form"] = is_ample_closed_form(L, S)
    except (UnsupportedRangeError, StructuralError):
        out["closed_form"] = None
    return out


def cmd_nef(args):
    S = surface_from_args(args)
    D = class_from_text(args.D, S)
    return {"surface": S.to_json(), "class": D.to_csv(), **nef_verdict(D, S).to_json()}


def cmd_seshadri(args):
    S = surface_from_args(args)
    if S.with_x:
        raise ArgError("seshadri blows up x itself; drop --with-x")
    L = class_from_text(args.L, S)
    x = XPosition.parse(args.x)
    res = seshadri(L, S, x, bounds_from_args(args), args.method)
    return {"surface": S.to_json(), "L": L.to_csv(), "x": str(x), **res.to_json()}


def _enum_rows(args):
    S = surface_from_args(args)
    bounds = resolve_bounds(S, bounds_from_args(args))
    classes = enumerate_neg_classes(S, bounds)
    f = args.filter
    if f == "structural":
        classes = [c for c in classes if structural_filter(c, S)]
    elif f == "effective":
        classes = [c for c in classes if structural_filter(c, S) and effectivity_heuristic(c, S)]
    elif f == "candidates":
        if not S.with_x:
            raise ArgError("--filter candidates needs --with-x")
        classes = [c for c in classes if candidate_filter(c, S.e)]
    return S, bounds, classes


def cmd_enumerate(args):
    S, bounds, classes = _enum_rows(args)
    rows = []
    for c in classes:
        row = c.to_json()
        row["csv"] = c.cls.to_csv()
        if args.filter == "candidates":
            row["family"] = family_of(c.cls)
        rows.append(row)
    return {"surface": S.to_json(), "bounds": bounds.to_json(), "filter": args.filter,
            "count": len(rows), "classes": rows}


def cmd_linsys(args):
    spec = LinSysSpec.parse(args.e, args.spec)
    seeds = parse_ints(args.seeds)
    if not seeds:
        raise ArgError("--seeds must list at least one seed")
    return analyse(spec, tuple(seeds), bounds=bounds_from_args(args)).to_json()


def cmd_scan(args):
    grid = default_grid() if args.grid is None else ScanGrid.from_json(load_json(args.grid, "--grid"))
    if args.seeds:
        seeds = tuple(parse_ints(args.seeds))
        if not seeds:
            raise ArgError("--seeds must list at least one seed")
        grid = ScanGrid(grid.e, grid.r, grid.a, grid.b, grid.m, grid.r_offset, grid.b_slope, seeds)
    rep = conjecture_scan(grid, args.jobs)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rep.csv_rows())
    summary = rep.summary()
    if args.out:
        write_atomic(args.out + ".csv", buf.getvalue())
        write_atomic(args.out + ".json", dumps(summary))
        return None
    return summary


def cmd_golden(args):
    target = os.path.join(args.dir, GOLDEN_VERSION)
    os.makedirs(target, exist_ok=True)
    existing = [n for n in GOLDEN_CASES if os.path.exists(os.path.join(target, n + ".json"))]
    if existing and not args.force:
        raise ArgError(f"{len(existing)} golden files already exist in {target}; pass --force to overwrite")
    for name, argv in GOLDEN_CASES.items():
        write_atomic(os.path.join(target, name + ".json"), render(build_parser().parse_args(argv)))
    return {"written": sorted(GOLDEN_CASES), "directory": target}


# -- output ---------------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str):
    """Write to a temp file in the same directory, then rename over the target."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _flat(obj: dict) -> dict:
    return {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in obj.items()}


def render(args) -> str:
    out = args.func(args)
    if out is None:
        return ""
    fmt = args.format
    rows = out.get("classes") if args.command == "enumerate" else None
    if fmt == "json":
        return dumps(out)
    if rows is None:
        rows = [_flat(out)]
    else:
        rows = [_flat({k: v for k, v in r.items() if k != "class"}) for r in rows]
    if not rows:
        return ""
    keys = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in keys}
    lines = ["  ".join(k.ljust(widths[k]) for k in keys)]
    lines += ["  ".join(str(r[k]).ljust(widths[k]) for k in keys) for r in rows]
    return "\n".join(lines) + "\n"


def _surface_opts(p, with_x=True):
    p.add_argument("--e", type=int, required=True, help="Hirzebruch invariant e >= 0")
    p.add_argument("--r", type=int, required=True, help="number of blown-up points")
    p.add_argument("--points", "--config", dest="points", default="very_general",
                   help="very_general (default), generic, or JSON {\"on_ce\": [...], \"fibers\": [...]}")
    if with_x:
        p.add_argument("--with-x", action="store_true", help="also blow up the extra point x")
    p.add_argument("--bounds", default="auto", help="enumeration box: auto or a_max,b_max,m_max")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hirzebruch", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--json", dest="format", action="store_const", const="json",
                        help="shorthand for --format json")
    common.add_argument("--output", help="write here instead of stdout (atomic)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add(name, **kw):
        return _add(name, parents=[common], **kw)

    p = add("ample", help="ampleness verdict for a class")
    _surface_opts(p)
    p.add_argument("--L", required=True, help="class as a,b,m1..mr[;mx]")
    p.set_defaults(func=cmd_ample)

    p = add("nef", help="nefness verdict for a class")
    _surface_opts(p)
    p.add_argument("--D", required=True, help="class as a,b,m1..mr[;mx]")
    p.set_defaults(func=cmd_nef)

    p = add("seshadri", help="Seshadri constant at x")
    _surface_opts(p, with_x=False)
    p.add_argument("--L", required=True, help="ample class a,b,m1..mr")
    p.add_argument("--x", "--x-position", dest="x", default="generic", help="generic, ce, fiber:i, ce+fiber:i, fiber+exc:i, exc:i")
    p.add_argument("--method", default="auto",
                   choices=("auto", "closed_form_fe", "closed_form_small_r", "closed_form_r_e", "enumerative"))
    p.set_defaults(func=cmd_seshadri)

    p = add("enumerate", help="list (-1)- and (-2)-classes")
    _surface_opts(p)
    p.add_argument("--filter", default="all", choices=("all", "structural", "effective", "candidates"))
    p.set_defaults(func=cmd_enumerate)

    p = add("linsys", help="dimensions and reduction of one linear system")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--spec", required=True, help="a,b,m1..mr")
    p.add_argument("--seeds", default="0,1,2")
    p.add_argument("--bounds", default="auto")
    p.set_defaults(func=cmd_linsys)

    p = add("scan", help="run the conjecture scanner over a grid")
    p.add_argument("--grid", help="grid JSON (file or literal); default: packaged grid")
    p.add_argument("--seeds", help="override the grid's seed list")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $HIRZEBRUCH_JOBS or 1)")
    p.add_argument("--out", help="write <out>.csv and <out>.json instead of printing the summary")
    p.set_defaults(func=cmd_scan)

    p = add("golden", help="regenerate the golden output files")
    p.add_argument("--dir", default="golden")
    p.add_argument("--force", action="store_true", help="overwrite existing golden files")
    p.set_defaults(func=cmd_golden)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = render(args)
    except JSONInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_JSON
    except UnsupportedRangeError as exc:
        print(f"unsupported range: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except BoundsError as exc:
        print(f"bounds: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ArgError, StructuralError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
