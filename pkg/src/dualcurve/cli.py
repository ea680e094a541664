"""Command-line interface: ``dualcurve {frenet,involute,verify,sample}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Numbers are written with 17 significant digits so JSON and CSV output
round-trips to the same doubles.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

from .catalog import catalog_names, get_curve
from .dsl import parse
from .errors import DualCurveError, ParseError
from .frenet import darboux_angle, frenet_at, is_unit_speed, split
from .involute import (InvolutePair, InvoluteParams, involute_darboux,
                       involute_darboux_direction, involute_distance, involute_kappa_tau,
                       involute_point)
from .jets import curve_point, eval_curve
from .verify import SUITES, corpus_dir, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_SAMPLES = 11


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


# ---------------------------------------------------------------------------
# formatting


def fmt(x) -> str:
    return format(float(x), ".17g")


def _json(value, indent=0) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if value is None or (isinstance(value, float) and not math.isfinite(value)):
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt(value)
    if isinstance(value, str):
        return _json_string(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{_json_string(k)}: {_json(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(_json(v) for v in value) + "]"
        if not value:
            return "[]"
        return "[\n" + ",\n".join(inner + _json(v, indent + 1) for v in value) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _json_string(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ch == "\n":
            out.append("\\n")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def to_json(doc) -> str:
    return _json(doc) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return fmt(v)
    return str(v)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(row[h]) for h in header])
    return buf.getvalue()


def _xyz(prefix):
    return [f"{prefix}_x", f"{prefix}_y", f"{prefix}_z"]


def _put(row, prefix, vec):
    for key, v in zip(_xyz(prefix), vec):
        row[key] = v


# ---------------------------------------------------------------------------
# input handling


def load_curve(source: str):
    """A catalog name, a path to a curve file, or a file in the bundled corpus."""
    path = Path(source)
    if path.is_file():
        return _parse_file(path)
    if source in catalog_names():
        return get_curve(source)
    bundled = corpus_dir() / "valid" / path.name
    if path.suffix == ".curve" and bundled.is_file():
        return _parse_file(bundled)
    raise InputError(f"unknown curve {source!r}: not a file and not one of "
                     f"{', '.join(catalog_names())}")


def _parse_file(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return parse(text)
    except ParseError as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from None


def parse_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"range must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InputError(f"range must be lo:hi:n with numeric bounds, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise InputError("range bounds must be finite")
    if n < 2:
        raise InputError("range needs n >= 2 points")
    if not lo < hi:
        raise InputError("range needs lo < hi")
    return lo, hi, n


def grid_points(args, curve):
    """Parameter values from --at, --range, or the curve's domain."""
    if args.at is not None and args.range is not None:
        raise InputError("use either --at or --range, not both")
    if args.at is not None:
        if not math.isfinite(args.at):
            raise InputError("--at must be finite")
        return [args.at]
    lo, hi, n = parse_range(args.range) if args.range else (*curve.domain, DEFAULT_SAMPLES)
    return [lo + (hi - lo) * k / (n - 1) for k in range(n - 1)] + [hi]


def _params(args, grid):
    if args.c1 is None:
        raise InputError("--c1 is required")
    if not (math.isfinite(args.c1) and math.isfinite(args.c2)):
        raise InputError("--c1 and --c2 must be finite")
    if not args.c1 > max(grid):
        raise InputError(f"c1 = {args.c1:g} must exceed every s in the range (max {max(grid):g})")
    return InvoluteParams(args.c1, args.c2)


def _require_unit_speed(curve, grid):
    for s in grid:
        if not is_unit_speed(eval_curve(curve, s, order=1)):
            raise InputError(f"{curve.name} is not dual unit speed at s = {s:g}; "
                             "involutes are built on unit-speed evolutes")


# ---------------------------------------------------------------------------
# commands

FRENET_COLUMNS = (["s"] + _xyz("alpha") + _xyz("alpha_star")
                  + _xyz("t") + _xyz("t_star") + _xyz("n") + _xyz("n_star")
                  + _xyz("b") + _xyz("b_star")
                  + ["k1", "k2", "k1_star", "k2_star"] + _xyz("w") + _xyz("w_star"))

INVOLUTE_COLUMNS = (["s"] + _xyz("beta") + _xyz("beta_star")
                    + ["distance", "distance_star", "kappa_bar", "kappa_bar_star",
                       "tau_bar", "tau_bar_star", "phi", "phi_star"]
                    + _xyz("w_bar") + _xyz("w_bar_star") + _xyz("c_bar") + _xyz("c_bar_star"))

VERIFY_COLUMNS = ["name", "status", "grid_size", "max_residual", "tolerance", "bound", "note"]
SAMPLE_COLUMNS = ["polyline", "s", "x", "y", "z"]


def frenet_rows(curve, grid):
    rows = []
    for s in grid:
        sp = split(frenet_at(curve, s))
        p = curve_point(curve, s, check_domain=True)
        row = {"s": s}
        _put(row, "alpha", p.real)
        _put(row, "alpha_star", p.dual)
        for name in ("t", "t_star", "n", "n_star", "b", "b_star"):
            _put(row, name, getattr(sp, name))
        row.update(k1=sp.k1, k2=sp.k2, k1_star=sp.k1_star, k2_star=sp.k2_star)
        _put(row, "w", sp.w)
        _put(row, "w_star", sp.w_star)
        row["_split"] = sp
        row["_point"] = p
        rows.append(row)
    return rows


def cmd_frenet(args):
    curve = load_curve(args.curve)
    grid = grid_points(args, curve)
    rows = frenet_rows(curve, grid)
    if args.format == "csv":
        return to_csv(FRENET_COLUMNS, rows)
    doc = {"curve": curve.name, "rows": []}
    for row in rows:
        sp, p = row["_split"], row["_point"]
        doc["rows"].append({
            "s": row["s"], "alpha": list(p.real), "alpha_star": list(p.dual),
            "t": list(sp.t), "n": list(sp.n), "b": list(sp.b),
            "t_star": list(sp.t_star), "n_star": list(sp.n_star), "b_star": list(sp.b_star),
            "k1": sp.k1, "k2": sp.k2, "k1_star": sp.k1_star, "k2_star": sp.k2_star,
            "w": list(sp.w), "w_star": list(sp.w_star),
            "k1_prime": sp.k1_prime, "k1_prime_star": sp.k1_prime_star,
            "k2_prime": sp.k2_prime, "k2_prime_star": sp.k2_prime_star,
        })
    return to_json(doc)


def involute_rows(curve, params, grid):
    pair = InvolutePair(curve, params)
    rows = []
    for s in grid:
        app = pair.apparatus(s)
        beta = involute_point(pair, s)
        dist = involute_distance(pair, s)
        kb, tb = involute_kappa_tau(app, params)
        phi = darboux_angle(app)
        wb = involute_darboux(app, params)
        cb = involute_darboux_direction(app, params)
        row = {"s": s}
        _put(row, "beta", beta.real)
        _put(row, "beta_star", beta.dual)
        row.update(distance=dist.real, distance_star=dist.dual,
                   kappa_bar=kb.real, kappa_bar_star=kb.dual,
                   tau_bar=tb.real, tau_bar_star=tb.dual,
                   phi=phi.phi, phi_star=phi.phi_star)
        _put(row, "w_bar", wb.real)
        _put(row, "w_bar_star", wb.dual)
        _put(row, "c_bar", cb.real)
        _put(row, "c_bar_star", cb.dual)
        rows.append(row)
    return rows


def _grouped(row, columns):
    """JSON row: xyz column triples folded into lists."""
    out = {}
    for col in columns:
        if col.endswith(("_x", "_y", "_z")):
            key = col[:-2]
            if key not in out:
                out[key] = [row[f"{key}_x"], row[f"{key}_y"], row[f"{key}_z"]]
        else:
            out[col] = row[col]
    return out


def cmd_involute(args):
    curve = load_curve(args.curve)
    grid = grid_points(args, curve)
    params = _params(args, grid)
    _require_unit_speed(curve, grid)
    rows = involute_rows(curve, params, grid)
    if args.format == "csv":
        return to_csv(INVOLUTE_COLUMNS, rows)
    return to_json({"curve": curve.name, "c1": params.c1, "c2": params.c2,
                    "rows": [_grouped(r, INVOLUTE_COLUMNS) for r in rows]})


def _status(check):
    if check.skipped:
        return "skip"
    return "pass" if check.passed else "fail"


def cmd_verify(args):
    if args.tol is not None and not (args.tol > 0 and math.isfinite(args.tol)):
        raise InputError("--tol must be a positive number")
    curves = [load_curve(args.curve)] if args.curve else None
    c1 = 10.0 if args.c1 is None else args.c1
    c2s = (0.0, 0.5) if args.c2_given is None else (args.c2_given,)
    if curves:
        grid_hi = curves[0].domain[1]
        if not c1 > grid_hi:
            raise InputError(f"c1 = {c1:g} must exceed the domain end {grid_hi:g}")
    report = run_suite(args.suite, curves=curves, tol=args.tol, c1=c1, c2s=c2s)
    if args.format == "csv":
        rows = [{"name": c.name, "status": _status(c), "grid_size": c.grid_size,
                 "max_residual": c.max_residual, "tolerance": c.tolerance,
                 "bound": c.bound, "note": c.note} for c in report.checks]
        rows += [{"name": i.name, "status": "info", "grid_size": None,
                  "max_residual": i.value, "tolerance": None, "bound": None, "note": i.note}
                 for i in report.info]
        text = to_csv(VERIFY_COLUMNS, rows)
    else:
        text = to_json({
            "passed": report.passed,
            "checks": [{"name": c.name, "status": _status(c), "grid_size": c.grid_size,
                        "max_residual": c.max_residual, "tolerance": c.tolerance,
                        "bound": c.bound, "passed": c.passed, "note": c.note}
                       for c in report.checks],
            "info": [{"name": i.name, "value": i.value, "note": i.note} for i in report.info],
        })
    return text, report.passed


def sample_polylines(curve, params, grid):
    pair = InvolutePair(curve, params)
    lines = {"alpha": [], "alpha_star": [], "beta": [], "beta_star": []}
    for s in grid:
        a = curve_point(curve, s, check_domain=True)
        b = involute_point(pair, s)
        lines["alpha"].append((s, a.real))
        lines["alpha_star"].append((s, a.dual))
        lines["beta"].append((s, b.real))
        lines["beta_star"].append((s, b.dual))
    return lines


def cmd_sample(args):
    curve = load_curve(args.curve)
    grid = grid_points(args, curve)
    params = _params(args, grid)
    _require_unit_speed(curve, grid)
    lines = sample_polylines(curve, params, grid)
    if args.format == "csv":
        rows = [{"polyline": name, "s": s, "x": p[0], "y": p[1], "z": p[2]}
                for name, pts in lines.items() for s, p in pts]
        return to_csv(SAMPLE_COLUMNS, rows)
    return to_json({
        "curve": curve.name, "c1": params.c1, "c2": params.c2, "s": list(grid),
        "polylines": {name: [list(p) for _, p in pts] for name, pts in lines.items()},
    })


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualcurve",
        description="Dual-curve Frenet apparatus, involutes and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, involute=False):
        p.add_argument("--curve", required=True,
                       help="catalog name or path to a .curve file")
        p.add_argument("--at", type=float, help="single parameter value s")
        p.add_argument("--range", help="lo:hi:n, n >= 2 points including both ends "
                       "(write --range=-1:1:5 for a negative lo)")
        if involute:
            p.add_argument("--c1", type=float, required=True, help="λ = (c1 − s) + ε c2")
            p.add_argument("--c2", type=float, default=0.0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write to this file instead of stdout")

    common(sub.add_parser("frenet", help="dual Frenet apparatus along a curve"))
    common(sub.add_parser("involute", help="involute quantities along a curve"), involute=True)
    common(sub.add_parser("sample", help="polylines of α and β for plotting"), involute=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--curve", help="restrict curve suites to one curve (default: catalog)")
    v.add_argument("--tol", type=float, help="override every upper-bound tolerance")
    v.add_argument("--c1", type=float, help="involute constant c1 (default 10)")
    v.add_argument("--c2", type=float, dest="c2_given",
                   help="involute constant c2 (default: both 0 and 0.5)")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--out", help="write to this file instead of stdout")
    return parser


def _emit(text: str, out_path, stdout):
    if out_path:
        try:
            Path(out_path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {out_path}: {exc}") from None
    else:
        stdout.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            text, passed = cmd_verify(args)
            _emit(text, args.out, stdout)
            return EXIT_OK if passed else EXIT_FAIL
        handler = {"frenet": cmd_frenet, "involute": cmd_involute, "sample": cmd_sample}
        _emit(handler[args.command](args), args.out, stdout)
        return EXIT_OK
    except (InputError, DualCurveError) as exc:
        stderr.write(f"dualcurve {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except RecursionError:
        stderr.write(f"dualcurve {args.command}: input too deeply nested\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
