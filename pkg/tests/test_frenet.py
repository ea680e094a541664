import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualcurve import dual as dl
from dualcurve.catalog import EXPECTED, builtin_catalog, get_curve, helix_source
from dualcurve.dsl import parse
from dualcurve.dual import DualScalar
from dualcurve.errors import DegenerateCurve, NotUnitSpeed
from dualcurve.frenet import (darboux_angle, darboux_residuals, frenet_at, frenet_general,
                              frenet_residuals, frenet_unit_speed, is_unit_speed, recombine,
                              split, split_residuals)
from dualcurve.involute import verification_grid
from dualcurve.jets import FunctionCurve, eval_curve
from dualcurve.vectors import cross, dot

CATALOG = builtin_catalog()


def gap(a, b):
    return (a - b).magnitude()


def test_helix_3_4_closed_form():
    app = frenet_at(get_curve("helix_3_4"), 1.0)
    assert math.isclose(app.kappa.real, 0.12, abs_tol=1e-10)
    assert math.isclose(app.tau.real, 0.16, abs_tol=1e-10)
    assert abs(app.kappa.dual) < 1e-12 and abs(app.tau.dual) < 1e-12


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_expected_constant_curvatures(name):
    curve = get_curve(name)
    want_k, want_t = EXPECTED[name]["kappa"], EXPECTED[name]["tau"]
    for s in verification_grid(curve.domain, 7):
        app = frenet_at(curve, s)
        assert gap(app.kappa, DualScalar(*want_k)) <= 1e-10
        assert gap(app.tau, DualScalar(*want_t)) <= 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 9), st.integers(0, 9), st.floats(-1, 1))
def test_helix_family_curvature(a, b, sigma):
    """κ = a/c², τ = b/c², and the σB dual part gives κ − εστ, τ + εσκ."""
    curve = parse(helix_source(a, b, sigma, name="h"))
    c2 = a * a + b * b
    k, t = a / c2, b / c2
    app = frenet_at(curve, 2.0)
    assert gap(app.kappa, DualScalar(k, -sigma * t)) <= 1e-10
    assert gap(app.tau, DualScalar(t, sigma * k)) <= 1e-10


@pytest.mark.parametrize("curve", CATALOG, ids=lambda c: c.name)
def test_frame_is_orthonormal(curve):
    for s in verification_grid(curve.domain, 9):
        app = frenet_at(curve, s)
        for u in (app.T, app.N, app.B):
            assert gap(dot(u, u), DualScalar(1.0, 0.0)) <= 1e-12
        assert gap(dot(app.T, app.N), DualScalar(0.0, 0.0)) <= 1e-12
        assert gap(cross(app.T, app.N), app.B) <= 1e-12


@pytest.mark.parametrize("curve", CATALOG, ids=lambda c: c.name)
def test_frenet_and_darboux_equations(curve):
    for s in verification_grid(curve.domain, 12):
        assert frenet_residuals(curve, s).max() <= 1e-6
        assert darboux_residuals(curve, s).max() <= 1e-6
        assert split_residuals(curve, s).max() <= 1e-6


@pytest.mark.parametrize("curve", CATALOG, ids=lambda c: c.name)
def test_unit_speed_formula_agrees_with_general(curve):
    grid = verification_grid(curve.domain, 12)
    g0 = eval_curve(curve, grid[0])
    if not is_unit_speed(g0):
        with pytest.raises(NotUnitSpeed):
            frenet_unit_speed(g0)
        return
    for s in grid:
        g = eval_curve(curve, s)
        a, b = frenet_unit_speed(g, s), frenet_general(g, s)
        for u, v in ((a.T, b.T), (a.N, b.N), (a.B, b.B)):
            assert gap(u, v) <= 1e-10
        for u, v in ((a.kappa, b.kappa), (a.tau, b.tau),
                     (a.kappa_prime, b.kappa_prime), (a.tau_prime, b.tau_prime)):
            assert gap(u, v) <= 1e-10


def test_circle_is_planar():
    for s in verification_grid((0, 6), 11):
        app = frenet_at(get_curve("circle"), s)
        assert gap(app.tau, DualScalar(0.0, 0.0)) <= 1e-12


def test_darboux_vector_definition():
    app = frenet_at(get_curve("tantrix_1_2_dual"), 1.3)
    assert gap(app.W, app.T * app.tau + app.B * app.kappa) == 0.0


def test_darboux_angle_tangent_relation():
    app = frenet_at(get_curve("tantrix_1_2_dual"), 2.1)
    phi = darboux_angle(app).as_dual()
    assert gap(dl.tan(phi), app.tau / app.kappa) <= 1e-12
    assert -math.pi / 2 < phi.real < math.pi / 2
    q = dl.sqrt(app.kappa * app.kappa + app.tau * app.tau)
    assert gap(dl.cos(phi), app.kappa / q) <= 1e-12
    assert gap(dl.sin(phi), app.tau / q) <= 1e-12


def test_split_round_trip():
    app = frenet_at(get_curve("helix_3_4_dual"), 3.3)
    assert recombine(split(app)) == app


def test_line_is_degenerate():
    line = FunctionCurve("line", (lambda t: t, None, None))
    with pytest.raises(DegenerateCurve):
        frenet_at(line, 1.0)


def test_zero_speed_is_degenerate():
    cusp = FunctionCurve("cusp", (lambda t: t * t, lambda t: t * t * t, None))
    with pytest.raises(DegenerateCurve):
        frenet_at(cusp, 0.0)
