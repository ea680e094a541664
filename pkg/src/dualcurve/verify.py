"""Verification suites: every identity the library relies on, checked numerically.

Each suite returns a list of :class:`CheckResult`. A check is a maximum (or,
for discrimination checks, a minimum) over a grid compared against a
tolerance. Skipped checks carry a note saying why and do not fail a report.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from . import dual as dl
from .catalog import EXPECTED, builtin_catalog
from .dsl import CurveAst, eval_expr, parse, pretty
from .dual import DualScalar
from .errors import DualCurveError, ParseError
from .frenet import (darboux_residuals, frenet_at, frenet_general, frenet_residuals,
                     frenet_unit_speed, is_unit_speed, split_residuals)
from .involute import (InvolutePair, InvoluteParams, arc_rate, helix_report,
                       involute_apparatus, involute_darboux, involute_darboux_direction,
                       involute_distance, involute_frame_predicted, involute_kappa_tau,
                       involute_point, split_crosschecks, verification_grid)
from .jets import curve_point, eval_curve, fd_oracle
from .vectors import DualVec3, cross, dot, dual_angle, norm, normalize

__all__ = [
    "CheckResult", "InfoRecord", "VerificationReport", "SUITES", "TOLERANCES",
    "run_suite", "algebra_suite", "linear_suite", "jets_suite", "frenet_suite",
    "involute_suite", "helix_suite", "parser_suite", "corpus_dir",
]

# formula-vs-formula comparisons are jet exact; finite-difference ones are not
TOLERANCES = {
    "algebra": 1e-12,
    "linear": 1e-10,
    "naive": 1e-14,
    "fd": 1e-6,
    "unit_vs_general": 1e-10,
    "closed_form": 1e-10,
    "formula": 1e-8,
    "tangency": 1e-9,
    "direction": 1e-9,
    "distance": 1e-12,
    "planar": 1e-10,
    "helix": 1e-9,
    "discriminate": 1e-3,
    "count": 0.0,
}

SUITES = ("algebra", "linear", "jets", "frenet", "involute", "helix", "parser")
DEFAULT_C1 = 10.0
DEFAULT_C2 = (0.0, 0.5)
GRID = 50


@dataclass
class CheckResult:
    name: str
    grid_size: int
    max_residual: float
    tolerance: float
    passed: bool
    skipped: bool = False
    bound: str = "max"      # "max": residual <= tol; "min": residual > tol
    note: str = ""


@dataclass
class InfoRecord:
    """Informational finding that never affects the overall flag."""

    name: str
    value: float | None
    note: str = ""


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    info: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)
        self.info.extend(other.info)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]


class _Checks:
    """Collects checks, applying an optional global tolerance override."""

    def __init__(self, tol_override: float | None = None):
        self.report = VerificationReport()
        self.override = tol_override

    def tol(self, key: str) -> float:
        return TOLERANCES[key] if self.override is None else self.override

    def add(self, name, values, key, note="", grid_size=None):
        values = list(values)
        tol = self.tol(key)
        worst = max(values) if values else 0.0
        ok = bool(values) and math.isfinite(worst) and worst <= tol
        size = len(values) if grid_size is None else grid_size
        self.report.checks.append(CheckResult(name, size, worst, tol, ok, note=note))

    def add_min(self, name, values, threshold, note="", grid_size=None):
        """Lower-bound check (value > threshold); not affected by the override."""
        values = list(values)
        worst = min(values) if values else 0.0
        ok = bool(values) and worst > threshold
        size = len(values) if grid_size is None else grid_size
        self.report.checks.append(
            CheckResult(name, size, worst, threshold, ok, bound="min", note=note))

    def skip(self, name, key, note, grid_size=0):
        self.report.checks.append(
            CheckResult(name, grid_size, math.nan, self.tol(key), True, skipped=True, note=note))

    def info(self, name, value, note=""):
        self.report.info.append(InfoRecord(name, value, note))


def _rel(a, b) -> float:
    """Mixed relative error |a − b|/max(1, |b|), taken over real and ε parts."""
    if isinstance(a, DualVec3):
        return max(_rel(DualScalar(x, y), DualScalar(u, v))
                   for x, y, u, v in zip(a.real, a.dual, b.real, b.dual))
    a, b = dl.as_dual(a), dl.as_dual(b)
    return max(abs(a.real - b.real) / max(1.0, abs(b.real)),
               abs(a.dual - b.dual) / max(1.0, abs(b.dual)))


def _gap(a, b) -> float:
    return (a - b).magnitude()


# ---------------------------------------------------------------------------
# algebra


def _rand_dual(rng, lo=-10.0, hi=10.0):
    return DualScalar(rng.uniform(lo, hi), rng.uniform(lo, hi))


def _complex_step(f, x, h=1e-30):
    """f′(x) to machine precision from Im f(x + ih)/h."""
    return f(complex(x, h)).imag / h


_LIFTS = [
    ("sin", dl.sin, cmath.sin, (-10.0, 10.0)),
    ("cos", dl.cos, cmath.cos, (-10.0, 10.0)),
    ("tan", dl.tan, cmath.tan, (-1.2, 1.2)),
    ("sqrt", dl.sqrt, cmath.sqrt, (0.01, 10.0)),
    ("arccos", dl.arccos, cmath.acos, (-0.99, 0.99)),
    ("arctan", dl.arctan, cmath.atan, (-10.0, 10.0)),
]


def algebra_suite(n: int = 100_000, seed: int = 0, tol: float | None = None) -> VerificationReport:
    ck = _Checks(tol)
    rng = random.Random(seed)
    keys = ("add_assoc", "add_comm", "mul_assoc", "mul_comm", "distributive",
            "identities", "additive_inverse", "multiplicative_inverse", "eps_squared")
    worst = {k: 0.0 for k in keys}
    one, zero, eps = dl.ONE, dl.ZERO, dl.EPS
    for _ in range(n):
        a, b, c = _rand_dual(rng), _rand_dual(rng), _rand_dual(rng)
        worst["add_assoc"] = max(worst["add_assoc"], _rel((a + b) + c, a + (b + c)))
        worst["add_comm"] = max(worst["add_comm"], _rel(a + b, b + a))
        worst["mul_assoc"] = max(worst["mul_assoc"], _rel((a * b) * c, a * (b * c)))
        worst["mul_comm"] = max(worst["mul_comm"], _rel(a * b, b * a))
        worst["distributive"] = max(worst["distributive"], _rel(a * (b + c), a * b + a * c))
        worst["identities"] = max(worst["identities"], _rel(a * one, a), _rel(a + zero, a))
        worst["additive_inverse"] = max(worst["additive_inverse"], _rel(a + (-a), zero))
        if abs(a.real) > 1e-3:
            worst["multiplicative_inverse"] = max(worst["multiplicative_inverse"],
                                                  _rel(a * (1 / a), one))
        e = DualScalar(0.0, a.dual)
        worst["eps_squared"] = max(worst["eps_squared"], _rel(eps * eps, zero),
                                   _rel(e * e, zero))
    for k in keys:
        ck.add(f"algebra.{k}", [worst[k]], "algebra", grid_size=n)

    m = max(1, n // 10)
    for name, fd, fc, (lo, hi) in _LIFTS:
        err = 0.0
        for _ in range(m):
            x, xs = rng.uniform(lo, hi), rng.uniform(-10.0, 10.0)
            got = fd(DualScalar(x, xs))
            want = DualScalar(fc(x).real, xs * _complex_step(fc, x))
            err = max(err, _rel(got, want))
        ck.add(f"algebra.lift.{name}", [err], "algebra", grid_size=m)
    return ck.report


# ---------------------------------------------------------------------------
# dual linear algebra


def _rand_vec(rng):
    return DualVec3([rng.uniform(-5, 5) for _ in range(3)], [rng.uniform(-5, 5) for _ in range(3)])


def linear_suite(n: int = 10_000, seed: int = 1, tol: float | None = None) -> VerificationReport:
    ck = _Checks(tol)
    rng = random.Random(seed)
    w = {"norm_squared": [], "lagrange": [], "cross_orthogonal": [], "angle_cosine": []}
    for _ in range(n):
        a, b = _rand_vec(rng), _rand_vec(rng)
        na = norm(a)
        w["norm_squared"].append(_rel(na * na, dot(a, a)))
        c = cross(a, b)
        lag = dot(a, a) * dot(b, b) - dot(a, b) * dot(a, b)
        w["lagrange"].append(_rel(dot(c, c), lag))
        w["cross_orthogonal"].append(max(_rel(dot(c, a), 0.0), _rel(dot(c, b), 0.0)))
        ua, ub = normalize(a), normalize(b)
        try:
            ang = dual_angle(ua, ub)
        except DualCurveError:
            continue
        w["angle_cosine"].append(_rel(ang.cos(), dot(ua, ub)))
    for k, vals in w.items():
        ck.add(f"linear.{k}", vals, "linear")
    return ck.report


# ---------------------------------------------------------------------------
# curve suites


def _catalog(curves):
    return list(builtin_catalog() if curves is None else curves)


def _grid(curve, n=GRID, c1=None):
    return verification_grid(curve.domain, n, c1)


def _dual_unit_speed(curve, grid) -> bool:
    try:
        return all(is_unit_speed(eval_curve(curve, s, order=1)) for s in grid)
    except DualCurveError:
        return False


def jets_suite(curves=None, n: int = GRID, tol: float | None = None) -> VerificationReport:
    ck = _Checks(tol)
    for c in _catalog(curves):
        grid = _grid(c, n)
        per = {1: [], 2: [], 3: []}
        naive = []
        for s in grid:
            g = eval_curve(c, s, order=3)
            for k in per:
                per[k].append(_gap(g.at(k), fd_oracle(c, s, k)))
            if isinstance(c, CurveAst):
                want = DualVec3([eval_expr(e, s) for e in c.real_components],
                                [eval_expr(e, s) for e in c.dual_components])
                naive.append(_rel(g.at(0), want))
        for k, vals in per.items():
            ck.add(f"jets.{c.name}.order{k}_vs_fd", vals, "fd")
        if naive:
            ck.add(f"jets.{c.name}.order0_vs_naive", naive, "naive")
    return ck.report


def frenet_suite(curves=None, n: int = GRID, tol: float | None = None) -> VerificationReport:
    ck = _Checks(tol)
    for c in _catalog(curves):
        grid = _grid(c, n)
        fr, dr, sr, ug, closed = [], [], [], [], []
        unit = _dual_unit_speed(c, grid)
        expected = EXPECTED.get(c.name)
        for s in grid:
            fr.append(frenet_residuals(c, s).max())
            dr.append(darboux_residuals(c, s).max())
            sr.append(split_residuals(c, s).max())
            g = eval_curve(c, s)
            gen = frenet_general(g, s)
            if unit:
                us = frenet_unit_speed(g, s)
                ug.append(max(_gap(us.T, gen.T), _gap(us.N, gen.N), _gap(us.B, gen.B),
                              _rel(us.kappa, gen.kappa), _rel(us.tau, gen.tau),
                              _rel(us.kappa_prime, gen.kappa_prime),
                              _rel(us.tau_prime, gen.tau_prime)))
            if expected:
                closed.append(max(_gap(gen.kappa, DualScalar(*expected["kappa"])),
                                  _gap(gen.tau, DualScalar(*expected["tau"]))))
        ck.add(f"frenet.{c.name}.frenet_equations", fr, "fd")
        ck.add(f"frenet.{c.name}.darboux_equations", dr, "fd")
        ck.add(f"frenet.{c.name}.split_equations", sr, "fd")
        if unit:
            ck.add(f"frenet.{c.name}.unit_speed_vs_general", ug, "unit_vs_general")
        else:
            ck.skip(f"frenet.{c.name}.unit_speed_vs_general", "unit_vs_general",
                    "curve is not unit speed", len(grid))
        if closed:
            ck.add(f"frenet.{c.name}.closed_form", closed, "closed_form")
    return ck.report


def _pairs(c, c1, c2s):
    for c2 in c2s:
        yield f"{c.name}.c2={c2:g}", InvolutePair(c, InvoluteParams(c1, c2))


def involute_suite(curves=None, n: int = GRID, c1: float = DEFAULT_C1, c2s=DEFAULT_C2,
                   tol: float | None = None) -> VerificationReport:
    ck = _Checks(tol)
    names = ("tangency", "frame", "kappa_tau", "distance", "darboux", "darboux_direction",
             "arc_rate")
    keys = ("tangency", "formula", "formula", "distance", "formula", "direction", "formula")
    for c in _catalog(curves):
        grid = _grid(c, n, c1)
        unit = _dual_unit_speed(c, grid)
        for label, pair in _pairs(c, c1, c2s):
            if not unit:
                for nm, key in zip(names, keys):
                    ck.skip(f"involute.{label}.{nm}", key,
                            "evolute is not dual unit speed", len(grid))
                continue
            res = {nm: [] for nm in names}
            for s in grid:
                app = pair.apparatus(s)
                beta = involute_apparatus(pair, s)
                res["tangency"].append(dot(app.T, beta.T).magnitude())
                pred = involute_frame_predicted(app)
                res["frame"].append(max(_gap(p, d) for p, d in zip(pred, (beta.T, beta.N, beta.B))))
                kb, tb = involute_kappa_tau(app, pair.params)
                res["kappa_tau"].append(max(_rel(kb, beta.kappa), _rel(tb, beta.tau)))
                direct = norm(involute_point(pair, s) - curve_point(c, s))
                res["distance"].append(_gap(involute_distance(pair, s), direct))
                w_bar = involute_darboux(app, pair.params)
                res["darboux"].append(_gap(w_bar, beta.W))
                res["darboux_direction"].append(
                    _gap(involute_darboux_direction(app, pair.params), normalize(beta.W)))
                res["arc_rate"].append(_rel(arc_rate(app, pair.params), beta.speed))
            for nm, key in zip(names, keys):
                ck.add(f"involute.{label}.{nm}", res[nm], key)
            _crosscheck_info(ck, label, pair, grid)
    return ck.report


def _crosscheck_info(ck, label, pair, grid):
    worst: dict = {}
    notes: dict = {}
    for s in grid[:: max(1, len(grid) // 5)]:
        for cc in split_crosschecks(pair, s):
            notes.setdefault(cc.name, cc.note)
            prev = worst.get(cc.name)
            if cc.deviation is None:
                worst.setdefault(cc.name, None)
            elif prev is None or cc.deviation > prev:
                worst[cc.name] = cc.deviation
    for name in worst:
        ck.info(f"crosscheck.{label}.{name}", worst[name], notes[name])


def helix_suite(curves=None, n: int = GRID, c1: float = DEFAULT_C1, c2s=DEFAULT_C2,
                tol: float | None = None) -> VerificationReport:
    ck = _Checks(tol)
    for c in _catalog(curves):
        grid = _grid(c, n, c1)
        unit = _dual_unit_speed(c, grid)
        for label, pair in _pairs(c, c1, c2s):
            rep = helix_report(pair, grid)
            helix = rep.is_helix()
            ck.info(f"helix.{label}.ratio_slope", rep.ratio_slope,
                    "helix" if helix else "not a helix")
            tag = f"helix.{label}"
            if rep.degenerate:
                ck.add(f"{tag}.degenerate_points", [float(len(rep.degenerate))], "count")
            if not helix:
                for nm, key in (("tau_bar", "planar"), ("darboux_direction_gap", "helix"),
                                ("w_bar_b_bar_cross", "helix")):
                    ck.skip(f"{tag}.{nm}", key, "evolute is not a helix", len(grid))
                ck.add_min(f"{tag}.tau_bar_nonzero", [rep.min_tau_bar_formula],
                           TOLERANCES["discriminate"], "non-helix: involute is not planar",
                           grid_size=len(grid))
                continue
            size = len(grid)
            ck.add(f"{tag}.tau_bar", [rep.tau_bar_formula], "planar", grid_size=size)
            ck.add(f"{tag}.darboux_direction_gap", [rep.c_gap], "helix", grid_size=size)
            if unit:
                ck.add(f"{tag}.tau_bar_direct", [rep.tau_bar_direct], "planar", grid_size=size)
                ck.add(f"{tag}.w_bar_b_bar_cross", [rep.w_b_cross], "helix", grid_size=size)
            else:
                ck.skip(f"{tag}.tau_bar_direct", "planar",
                        "evolute is not dual unit speed", len(grid))
                ck.skip(f"{tag}.w_bar_b_bar_cross", "helix",
                        "evolute is not dual unit speed", len(grid))
    return ck.report


# ---------------------------------------------------------------------------
# parser


def corpus_dir() -> Path:
    return Path(__file__).resolve().parent / "data" / "corpus"


def _mutations(text: str, rng: random.Random, count: int):
    alphabet = "s()+-*/^,=[]{}#.0123456789epi \n\tsincoqrt$@"
    for _ in range(count):
        chars = list(text)
        for _ in range(rng.randint(1, 4)):
            op = rng.randrange(3)
            pos = rng.randrange(len(chars) + 1)
            if op == 0 and chars:
                del chars[min(pos, len(chars) - 1)]
            elif op == 1:
                chars.insert(pos, rng.choice(alphabet))
            elif chars:
                chars[min(pos, len(chars) - 1)] = rng.choice(alphabet)
        yield "".join(chars)


def _probe(text: str) -> bool:
    """True if ``text`` is handled gracefully: parsed and evaluated, or rejected."""
    try:
        ast = parse(text)
    except ParseError as exc:
        return exc.line >= 1 and exc.column >= 1
    except Exception:
        return False
    lo, hi = ast.domain
    for s in (lo, 0.5 * (lo + hi), hi):
        try:
            eval_curve(ast, s)
        except DualCurveError:
            pass
        except Exception:
            return False
    return True


def parser_suite(corpus: Path | None = None, fuzz: int = 300, seed: int = 2,
                 tol: float | None = None) -> VerificationReport:
    ck = _Checks(tol)
    root = Path(corpus) if corpus is not None else corpus_dir()
    valid = sorted((root / "valid").glob("*.curve"))
    invalid = sorted((root / "invalid").glob("*.curve"))
    bad_valid, bad_invalid, texts = [], [], []
    for path in valid:
        text = path.read_text(encoding="utf-8")
        texts.append(text)
        try:
            ast = parse(text)
            if parse(pretty(ast)) != ast:
                raise AssertionError("round trip changed the AST")
            lo, hi = ast.domain
            for s in verification_grid((lo, hi), 5):
                eval_curve(ast, s)
        except Exception as exc:  # any failure on a valid file counts
            bad_valid.append(f"{path.name}: {exc}")
    for path in invalid:
        try:
            parse(path.read_text(encoding="utf-8"))
            bad_invalid.append(f"{path.name}: accepted")
        except ParseError as exc:
            if exc.line < 1 or exc.column < 1:
                bad_invalid.append(f"{path.name}: bad position")
        except Exception as exc:
            bad_invalid.append(f"{path.name}: {type(exc).__name__}: {exc}")
    ck.add("parser.valid_files", [float(len(bad_valid))], "count", "; ".join(bad_valid),
           grid_size=len(valid))
    ck.add("parser.invalid_files", [float(len(bad_invalid))], "count", "; ".join(bad_invalid),
           grid_size=len(invalid))
    ck.add_min("parser.valid_corpus_size", [float(len(valid))], 29.0, "at least 30 files")
    ck.add_min("parser.invalid_corpus_size", [float(len(invalid))], 19.0, "at least 20 files")

    rng = random.Random(seed)
    seeds = texts + [pretty(c) for c in builtin_catalog()]
    crashes = 0
    total = 0
    if seeds:
        per = max(1, fuzz // len(seeds))
        for text in seeds:
            for m in _mutations(text, rng, per):
                total += 1
                crashes += not _probe(m)
    ck.add("parser.fuzz_no_crash", [float(crashes)], "count", grid_size=total)

    cat_bad = 0
    for c in builtin_catalog():
        cat_bad += parse(pretty(c)) != c
    ck.add("parser.catalog_round_trip", [float(cat_bad)], "count",
           grid_size=len(builtin_catalog()))
    return ck.report


# ---------------------------------------------------------------------------


def run_suite(suite: str = "all", curves=None, tol: float | None = None,
              c1: float = DEFAULT_C1, c2s=DEFAULT_C2) -> VerificationReport:
    """Run one suite (or ``all``); ``curves`` restricts the curve suites."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    chosen = SUITES if suite == "all" else (suite,)
    report = VerificationReport()
    for name in chosen:
        if name == "algebra":
            part = algebra_suite(tol=tol)
        elif name == "linear":
            part = linear_suite(tol=tol)
        elif name == "jets":
            part = jets_suite(curves, tol=tol)
        elif name == "frenet":
            part = frenet_suite(curves, tol=tol)
        elif name == "involute":
            part = involute_suite(curves, c1=c1, c2s=c2s, tol=tol)
        elif name == "helix":
            part = helix_suite(curves, c1=c1, c2s=c2s, tol=tol)
        else:
            part = parser_suite(tol=tol)
        report.extend(part)
    return report
