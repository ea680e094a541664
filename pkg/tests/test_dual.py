import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualcurve import dual as dl
from dualcurve.dual import EPS, ONE, ZERO, DualAngle, DualScalar, angle_from_cosine
from dualcurve.errors import DegenerateAngle, DomainError, NonInvertible

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
duals = st.builds(DualScalar, finite, finite)


def close(a, b, tol=1e-12):
    a, b = dl.as_dual(a), dl.as_dual(b)
    return (abs(a.real - b.real) <= tol * max(1.0, abs(b.real))
            and abs(a.dual - b.dual) <= tol * max(1.0, abs(b.dual)))


def test_eps_squares_to_zero():
    assert EPS * EPS == ZERO
    assert EPS * EPS * 5 == ZERO


def test_multiplication_rule():
    assert DualScalar(2, 3) * DualScalar(5, 7) == DualScalar(10, 2 * 7 + 3 * 5)


def test_division_inverts_multiplication_exactly_with_fractions():
    a = DualScalar(Fraction(3, 7), Fraction(-2, 5))
    b = DualScalar(Fraction(5, 3), Fraction(1, 9))
    assert (a / b) * b == a


def test_division_by_pure_dual_raises():
    with pytest.raises(NonInvertible):
        ONE / DualScalar(0.0, 1.0)
    with pytest.raises(ZeroDivisionError):
        1 / EPS


@settings(max_examples=300)
@given(duals, duals, duals)
def test_ring_axioms(a, b, c):
    assert close((a + b) + c, a + (b + c))
    assert a + b == b + a
    assert a * b == b * a
    assert close((a * b) * c, a * (b * c), 1e-10)
    assert close(a * (b + c), a * b + a * c, 1e-10)
    assert a * ONE == a and a + ZERO == a


@given(duals)
def test_pure_dual_part_is_nilpotent(a):
    e = DualScalar(0.0, a.dual)
    assert e * e == ZERO


@given(duals)
def test_inverse(a):
    if abs(a.real) < 1e-6:
        return
    p = a * (1 / a)
    # the dual slot cancels two terms of size |a.dual / a.real|
    scale = 1.0 + abs(a.dual / a.real)
    assert abs(p.real - 1.0) <= 1e-12 and abs(p.dual) <= 1e-12 * scale


@given(duals, st.integers(min_value=0, max_value=6))
def test_integer_power_matches_repeated_product(a, n):
    prod = ONE
    for _ in range(n):
        prod = prod * a
    assert close(a**n, prod, 1e-9)


@pytest.mark.parametrize("name, f, fc, lo, hi", [
    ("sin", dl.sin, cmath.sin, -6, 6),
    ("cos", dl.cos, cmath.cos, -6, 6),
    ("tan", dl.tan, cmath.tan, -1.3, 1.3),
    ("sqrt", dl.sqrt, cmath.sqrt, 0.01, 50),
    ("arccos", dl.arccos, cmath.acos, -0.99, 0.99),
    ("arctan", dl.arctan, cmath.atan, -20, 20),
])
def test_lift_matches_complex_step_derivative(name, f, fc, lo, hi):
    for k in range(41):
        x = lo + (hi - lo) * k / 40
        xs = 0.7 - 0.03 * k
        got = f(DualScalar(x, xs))
        deriv = fc(complex(x, 1e-30)).imag / 1e-30
        assert close(got, DualScalar(fc(x).real, xs * deriv)), (name, x)


def test_lift_generic():
    v = dl.lift(math.exp, math.exp, DualScalar(0.0, 2.0))
    assert v == DualScalar(1.0, 2.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        dl.sqrt(DualScalar(0.0, 1.0))
    with pytest.raises(DomainError):
        dl.sqrt(-1.0)
    with pytest.raises(DomainError):
        dl.arccos(DualScalar(1.0, 0.0))


def test_angle_from_cosine_round_trip():
    ang = DualAngle(1.1, 0.4)
    back = angle_from_cosine(ang.cos())
    assert math.isclose(back.phi, 1.1, rel_tol=1e-14)
    assert math.isclose(back.phi_star, 0.4, rel_tol=1e-13)


def test_angle_from_cosine_rejects_parallel():
    with pytest.raises(DegenerateAngle):
        angle_from_cosine(DualScalar(1.0, 0.3))
    with pytest.raises(DegenerateAngle):
        angle_from_cosine(DualScalar(-1.0, 0.0))


def test_dual_angle_sin_cos_identity():
    ang = DualAngle(0.3, -1.7)
    c, s = ang.cos(), ang.sin()
    assert close(c * c + s * s, ONE, 1e-15)


def test_hash_and_iteration():
    a = DualScalar(1.5, -2.0)
    assert hash(a) == hash(DualScalar(1.5, -2.0))
    assert tuple(a) == (1.5, -2.0)
