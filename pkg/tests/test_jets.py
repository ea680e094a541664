import math
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualcurve import jets
from dualcurve.catalog import builtin_catalog, get_curve
from dualcurve.dual import DualScalar
from dualcurve.errors import DomainError, NonInvertible, OutOfDomain
from dualcurve.involute import verification_grid
from dualcurve.jets import FunctionCurve, Jet4, eval_curve, fd_derivative, fd_oracle

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)
dual_fracs = st.builds(DualScalar, fracs, fracs)
frac_jets = st.lists(dual_fracs, min_size=5, max_size=5).map(Jet4)


@settings(max_examples=200)
@given(frac_jets, frac_jets)
def test_product_is_exact_leibniz(a, b):
    p = a * b
    for n in range(5):
        want = sum((a.c[k] * b.c[n - k] * comb(n, k) for k in range(n + 1)),
                   DualScalar(Fraction(0), Fraction(0)))
        assert p.c[n] == want


@settings(max_examples=200)
@given(frac_jets, frac_jets)
def test_division_inverts_product_exactly(a, b):
    if b.c[0].real == 0:
        return
    assert (a * b) / b == a


def test_division_by_zero_real_jet():
    with pytest.raises(NonInvertible):
        Jet4([1.0, 1.0]) / Jet4([DualScalar(0.0, 1.0), 1.0])


def test_square_of_variable():
    j = Jet4.variable(3.0) ** 2
    assert [c.real for c in j.c] == [9.0, 6.0, 2.0, 0.0, 0.0]


def test_composition_sin_of_dual_variable():
    # sin(s + ε) at s = 0.4: derivatives sin^(k)(0.4) with ε parts sin^(k+1)(0.4)
    x = Jet4([DualScalar(0.4, 1.0), 1.0, 0.0, 0.0, 0.0])
    j = jets.sin(x)
    d = [math.sin, math.cos, lambda t: -math.sin(t), lambda t: -math.cos(t)] * 2
    for k in range(5):
        assert math.isclose(j.c[k].real, d[k](0.4), abs_tol=1e-15)
        assert math.isclose(j.c[k].dual, d[k + 1](0.4), abs_tol=1e-15)


@pytest.mark.parametrize("fn, f", [(jets.sin, math.sin), (jets.cos, math.cos),
                                   (jets.tan, math.tan), (jets.sqrt, math.sqrt)])
def test_composition_matches_finite_differences(fn, f):
    s = 0.7
    j = fn(Jet4.variable(s) * 0.5 + 0.1)
    for k in range(1, 4):
        want = fd_derivative(lambda t: f(0.5 * t + 0.1), s, k)
        assert abs(j.c[k].real - want) < 1e-7


def test_sqrt_domain():
    with pytest.raises(DomainError):
        jets.sqrt(Jet4.variable(0.0))


def test_helix_hand_example():
    g = eval_curve(get_curve("helix_3_4"), 0.0)
    x = [c.real for c in g.x.c]
    y = [c.real for c in g.y.c]
    z = [c.real for c in g.z.c]
    for got, want in zip(x, [3, 0, -3 / 25, 0, 3 / 625]):
        assert math.isclose(got, want, abs_tol=1e-15)
    for got, want in zip(y, [0, 3 / 5, 0, -3 / 125, 0]):
        assert math.isclose(got, want, abs_tol=1e-15)
    for got, want in zip(z, [0, 4 / 5, 0, 0, 0]):
        assert math.isclose(got, want, abs_tol=1e-15)


def test_dual_components_fill_eps_slots():
    curve = FunctionCurve("c", (lambda t: t, None, None), (None, None, lambda t: t * t))
    g = eval_curve(curve, 2.0)
    assert [c.dual for c in g.z.c] == [4.0, 4.0, 2.0, 0.0, 0.0]
    assert [c.real for c in g.z.c] == [0.0] * 5


def test_out_of_domain():
    with pytest.raises(OutOfDomain):
        eval_curve(get_curve("helix_3_4"), 7.0)


@pytest.mark.parametrize("curve", builtin_catalog(), ids=lambda c: c.name)
def test_catalog_jets_match_fd_oracle(curve):
    for s in verification_grid(curve.domain, 50):
        g = eval_curve(curve, s)
        for k in (1, 2, 3):
            assert (g.at(k) - fd_oracle(curve, s, k)).magnitude() <= 1e-6


def test_fd_oracle_order_four_on_helix():
    c = get_curve("helix_3_4")
    g = eval_curve(c, 2.0)
    assert (g.at(4) - fd_oracle(c, 2.0, 4)).magnitude() <= 1e-6
