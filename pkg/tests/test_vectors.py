import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualcurve.dual import DualAngle, DualScalar
from dualcurve.errors import DegenerateAngle, NotUnit, ZeroRealPart
from dualcurve.vectors import DualVec3, cross, det, dot, dual_angle, norm, normalize, smul

comp = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
triples = st.tuples(comp, comp, comp)
vecs = st.builds(DualVec3, triples, triples)


def rel(a: DualScalar, b: DualScalar):
    return max(abs(a.real - b.real) / max(1.0, abs(b.real)),
               abs(a.dual - b.dual) / max(1.0, abs(b.dual)))


def nonzero(v):
    return math.sqrt(sum(x * x for x in v.real)) > 1e-3


def test_cross_of_basis_vectors():
    e1 = DualVec3((1, 0, 0), (0, 0, 0))
    e2 = DualVec3((0, 1, 0), (0, 0, 0))
    assert cross(e1, e2) == DualVec3((0, 0, 1), (0, 0, 0))


def test_dot_dual_part():
    a = DualVec3((1, 2, 3), (4, 5, 6))
    b = DualVec3((7, 8, 9), (1, 0, -1))
    assert dot(a, b) == DualScalar(50, (1 - 3) + (28 + 40 + 54))


def test_module_action():
    lam = DualScalar(2.0, 3.0)
    a = DualVec3((1, 0, 2), (0, 1, 0))
    assert smul(lam, a) == DualVec3((2, 0, 4), (3, 2, 6))
    assert a * lam == smul(lam, a)


@settings(max_examples=300)
@given(vecs)
def test_norm_squared_is_self_dot(a):
    if not nonzero(a):
        return
    n = norm(a)
    assert rel(n * n, dot(a, a)) <= 1e-10


@settings(max_examples=300)
@given(vecs, vecs)
def test_lagrange_identity(a, b):
    c = cross(a, b)
    lag = dot(a, a) * dot(b, b) - dot(a, b) * dot(a, b)
    # cancellation error scales with |a|²|b|², not with the result
    scale = max(1.0, (a.magnitude() * b.magnitude()) ** 2)
    err = dot(c, c) - lag
    assert max(abs(err.real), abs(err.dual)) <= 1e-12 * scale


@settings(max_examples=300)
@given(vecs, vecs)
def test_cross_is_orthogonal(a, b):
    c = cross(a, b)
    scale = max(1.0, a.magnitude() * b.magnitude()) * max(a.magnitude(), b.magnitude(), 1.0)
    for d in (dot(c, a), dot(c, b)):
        assert max(abs(d.real), abs(d.dual)) <= 1e-12 * scale


@given(vecs, vecs, vecs)
def test_triple_product_is_cyclic(a, b, c):
    scale = max(1.0, a.magnitude() * b.magnitude() * c.magnitude())
    d = det(a, b, c) - det(b, c, a)
    assert max(abs(d.real), abs(d.dual)) <= 1e-12 * scale


@given(vecs)
def test_normalize_gives_unit_dual_vector(a):
    if not nonzero(a):
        return
    n = norm(normalize(a))
    assert abs(n.real - 1) <= 1e-12 and abs(n.dual) <= 1e-9 * max(1.0, a.magnitude())


def test_norm_of_pure_dual_vector_raises():
    with pytest.raises(ZeroRealPart):
        norm(DualVec3((0, 0, 0), (1, 0, 0)))


def test_dual_angle_between_skew_lines():
    # x axis, and a line along y offset by d along z: angle π/2, distance d
    d = 2.5
    a = DualVec3((1, 0, 0), (0, 0, 0))
    p = (0.0, 0.0, d)
    direction = (0.0, 1.0, 0.0)
    moment = (p[1] * direction[2] - p[2] * direction[1],
              p[2] * direction[0] - p[0] * direction[2],
              p[0] * direction[1] - p[1] * direction[0])
    b = DualVec3(direction, moment)
    ang = dual_angle(a, b)
    assert math.isclose(ang.phi, math.pi / 2)
    assert math.isclose(abs(ang.phi_star), d)


def test_dual_angle_cosine_matches_dot():
    a = normalize(DualVec3((1, 2, 0.5), (0.3, -0.1, 0.2)))
    b = normalize(DualVec3((-0.5, 1, 2), (1.0, 0.0, -0.4)))
    ang = dual_angle(a, b)
    assert rel(DualAngle.cos(ang), dot(a, b)) <= 1e-14


def test_dual_angle_rejects_non_unit_and_parallel():
    with pytest.raises(NotUnit):
        dual_angle(DualVec3((2, 0, 0)), DualVec3((0, 1, 0)))
    with pytest.raises(DegenerateAngle):
        dual_angle(DualVec3((1, 0, 0)), DualVec3((1, 0, 0), (0, 1, 0)))
