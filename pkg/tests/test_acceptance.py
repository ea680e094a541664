"""Acceptance gate: one test per acceptance criterion, each printing a
PASS/FAIL line with the worst residual against its stated tolerance.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone.
"""

import io
import json
import sys
import time

import pytest

from dualcurve.catalog import builtin_catalog
from dualcurve.cli import main
from dualcurve.verify import (algebra_suite, frenet_suite, helix_suite, involute_suite,
                              jets_suite, linear_suite, parser_suite)


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {'PASS' if ok else 'FAIL'} | {criterion} | {detail}")
        assert ok, f"{criterion}: {detail}"
    return emit


def _summary(checks):
    active = [c for c in checks if not c.skipped]
    failed = [c for c in active if not c.passed]
    worst = max(active, key=lambda c: c.max_residual / c.tolerance if c.bound == "max"
                and c.tolerance > 0 else 0.0)
    text = (f"{len(active)} checks, {len(checks) - len(active)} skipped, "
            f"{len(failed)} failed; worst {worst.name} = {worst.max_residual:.3g} "
            f"(tol {worst.tolerance:g})")
    if failed:
        text += "; failures: " + ", ".join(f"{c.name}={c.max_residual:.3g}" for c in failed[:5])
    return not failed, text


def _select(checks, *fragments):
    return [c for c in checks if any(f in c.name for f in fragments)]


def test_algebra_suite(report):
    rep = algebra_suite(n=100_000)
    assert all(c.tolerance == 1e-12 for c in rep.checks)
    ring = [c for c in rep.checks if not c.name.startswith("algebra.lift")]
    assert all(c.grid_size == 100_000 for c in ring)
    lifts = {c.name.rsplit(".", 1)[1] for c in rep.checks if c.name.startswith("algebra.lift")}
    assert {"sin", "cos", "tan", "sqrt", "arccos"} <= lifts
    report("algebra: 1e5 triples, ring axioms + eps^2 = 0 + lifts <= 1e-12 relative",
           *_summary(rep.checks))


def test_dual_linear_suite(report):
    rep = linear_suite(n=10_000)
    names = {c.name for c in rep.checks}
    assert {"linear.norm_squared", "linear.lagrange", "linear.cross_orthogonal"} <= names
    assert all(c.tolerance == 1e-10 and c.grid_size >= 9_000 for c in rep.checks)
    report("dual linear: norm^2 = self-dot, Lagrange, cross orthogonality on 1e4 vectors <= 1e-10",
           *_summary(rep.checks))


def test_jet_oracle_suite(report):
    rep = jets_suite()
    fd = _select(rep.checks, "_vs_fd")
    assert len(fd) == 3 * len(builtin_catalog())
    assert all(c.grid_size == 50 and c.tolerance == 1e-6 for c in fd)
    report("jets: orders 1-3 vs finite differences, all catalog curves, 50 points, <= 1e-6",
           *_summary(rep.checks))


def test_frenet_suite(report):
    rep = frenet_suite()
    eqs = _select(rep.checks, "frenet_equations", "split_equations", "darboux_equations")
    assert all(c.tolerance == 1e-6 for c in eqs)
    unit = [c for c in _select(rep.checks, "unit_speed_vs_general") if not c.skipped]
    assert len(unit) >= 6 and all(c.tolerance == 1e-10 for c in unit)
    helix = [c for c in rep.checks if c.name == "frenet.helix_3_4.closed_form"]
    assert helix and helix[0].tolerance == 1e-10
    report("frenet: residuals <= 1e-6, unit-speed vs general <= 1e-10, helix_3_4 (0.12, 0.16)",
           *_summary(rep.checks))


def test_involute_suite(report):
    rep = involute_suite(c1=10.0, c2s=(0.0, 0.5))
    active = [c for c in rep.checks if not c.skipped]
    tol = {"tangency": 1e-9, "frame": 1e-8, "kappa_tau": 1e-8, "distance": 1e-12,
           "darboux": 1e-8, "darboux_direction": 1e-9}
    for c in active:
        key = c.name.rsplit(".", 1)[1]
        if key in tol:
            assert c.tolerance == tol[key], c.name
    pairs = {c.name.rsplit(".", 1)[0] for c in active}
    assert len(pairs) >= 14
    ok, text = _summary(rep.checks)
    report("involute: c1 = 10, c2 in {0, 0.5}, 50 points; tangency, frame, curvatures, "
           "distance, Darboux vector and direction", ok,
           text + f"; {len(pairs)} evolute/c2 pairs checked")


def test_helix_evolute_planar_involute(report):
    rep = helix_suite(c1=10.0, c2s=(0.0, 0.5))
    planar = [c for c in rep.checks if c.name.endswith(".tau_bar") and not c.skipped]
    assert any(".helix_3_4." in c.name for c in planar)
    assert all(c.tolerance == 1e-10 for c in planar)
    disc = [c for c in rep.checks if c.name.startswith("helix.twisted_cubic.")
            and c.name.endswith("tau_bar_nonzero")]
    assert disc and all(c.tolerance == 1e-3 for c in disc)
    ok, text = _summary(rep.checks)
    d = min(c.max_residual for c in disc)
    report("helix: planar involute (tau_bar <= 1e-10, C gap and W-bar x B-bar <= 1e-9); "
           "twisted cubic |tau_bar| > 1e-3", ok, text + f"; twisted cubic min |tau_bar| = {d:.3g}")


def test_parser_suite(report):
    rep = parser_suite()
    sizes = {c.name: c.max_residual for c in rep.checks if c.name.endswith("corpus_size")}
    assert sizes["parser.valid_corpus_size"] >= 30 and sizes["parser.invalid_corpus_size"] >= 20
    ok, text = _summary(rep.checks)
    report("parser: >= 30 valid files round-trip and evaluate, >= 20 invalid give positioned "
           "errors, no crashes", ok,
           text + f"; {int(sizes['parser.valid_corpus_size'])} valid, "
           f"{int(sizes['parser.invalid_corpus_size'])} invalid")


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue()


def test_cli_contract(report):
    matrix = [
        (("frenet", "--curve", "helix_3_4", "--at", "0", "--format", "json"), 0),
        (("frenet", "--curve", "helix_3_4", "--range", "0:6:5", "--format", "csv"), 0),
        (("frenet", "--curve", "line.curve", "--at", "1"), 2),
        (("frenet", "--curve", "missing_curve"), 2),
        (("frenet", "--curve", "helix_3_4", "--range", "0:1:1"), 2),
        (("involute", "--curve", "helix_3_4", "--c1", "10", "--c2", "0", "--at", "4"), 0),
        (("involute", "--curve", "helix_3_4", "--c1", "3", "--range", "0:6:5"), 2),
        (("sample", "--curve", "helix_3_4", "--c1", "10", "--range", "0:6:2"), 0),
        (("verify", "--curve", "twisted_cubic", "--suite", "helix"), 0),
        (("verify", "--suite", "frenet", "--curve", "helix_3_4", "--tol", "1e-30"), 1),
        (("verify", "--tol", "0"), 2),
        (("nonsense",), 2),
    ]
    bad = []
    for argv, want in matrix:
        code, first = _cli(*argv)
        if code != want:
            bad.append(f"{' '.join(argv)} -> {code} (want {want})")
        elif code != 2 and _cli(*argv) != (code, first):
            bad.append(f"{' '.join(argv)} output differs between runs")
    t0 = time.perf_counter()
    code, out = _cli("verify", "--suite", "all")
    elapsed = time.perf_counter() - t0
    if code != 0 or json.loads(out)["passed"] is not True:
        bad.append(f"verify --suite all -> {code}")
    if elapsed >= 60:
        bad.append(f"verify --suite all took {elapsed:.1f}s")
    if _cli("verify", "--suite", "all") != (code, out):
        bad.append("verify --suite all output differs between runs")
    report("cli: exit codes 0/1/2 on a scripted matrix, byte-identical repeated output",
           not bad, "; ".join(bad) or f"{len(matrix)} invocations ok; verify all in {elapsed:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
