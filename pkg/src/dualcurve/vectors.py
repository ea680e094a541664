"""Dual 3-vectors: the module D³ over the dual numbers."""

from __future__ import annotations

import math
from numbers import Real

from .dual import DualAngle, DualScalar, angle_from_cosine, as_dual
from .errors import DegenerateAngle, NotUnit, ZeroRealPart

__all__ = [
    "DualVec3", "vadd", "smul", "dot", "cross", "norm", "normalize",
    "dual_angle", "det", "UNIT_TOL",
]

UNIT_TOL = 1e-9


def _rdot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _rcross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _radd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _rscale(k, a):
    return (k * a[0], k * a[1], k * a[2])


class DualVec3:
    """``real + ε·dual`` with ``real`` and ``dual`` real 3-vectors (tuples)."""

    __slots__ = ("real", "dual")

    def __init__(self, real, dual=(0.0, 0.0, 0.0)):
        self.real = tuple(real)
        self.dual = tuple(dual)
        if len(self.real) != 3 or len(self.dual) != 3:
            raise ValueError("DualVec3 parts must have exactly three components")

    @classmethod
    def from_components(cls, x, y, z):
        x, y, z = as_dual(x), as_dual(y), as_dual(z)
        return cls((x.real, y.real, z.real), (x.dual, y.dual, z.dual))

    def components(self):
        return tuple(DualScalar(r, d) for r, d in zip(self.real, self.dual))

    def __add__(self, other):
        if not isinstance(other, DualVec3):
            return NotImplemented
        return DualVec3(_radd(self.real, other.real), _radd(self.dual, other.dual))

    def __sub__(self, other):
        if not isinstance(other, DualVec3):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DualVec3(_rscale(-1, self.real), _rscale(-1, self.dual))

    def __mul__(self, lam):
        if isinstance(lam, (DualScalar, Real)):
            return smul(lam, self)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, lam):
        if isinstance(lam, (DualScalar, Real)):
            return smul(1 / as_dual(lam), self)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, DualVec3):
            return NotImplemented
        return self.real == other.real and self.dual == other.dual

    def __hash__(self):
        return hash((self.real, self.dual))

    def __repr__(self):
        return f"DualVec3({self.real!r}, {self.dual!r})"

    def magnitude(self):
        """max(‖real‖, ‖dual‖), the error measure used by the checks."""
        return max(math.sqrt(_rdot(self.real, self.real)),
                   math.sqrt(_rdot(self.dual, self.dual)))


def vadd(a: DualVec3, b: DualVec3) -> DualVec3:
    return a + b


def smul(lam, a: DualVec3) -> DualVec3:
    lam = as_dual(lam)
    return DualVec3(
        _rscale(lam.real, a.real),
        _radd(_rscale(lam.real, a.dual), _rscale(lam.dual, a.real)),
    )


def dot(a: DualVec3, b: DualVec3) -> DualScalar:
    return DualScalar(
        _rdot(a.real, b.real), _rdot(a.real, b.dual) + _rdot(a.dual, b.real)
    )


def cross(a: DualVec3, b: DualVec3) -> DualVec3:
    return DualVec3(
        _rcross(a.real, b.real),
        _radd(_rcross(a.real, b.dual), _rcross(a.dual, b.real)),
    )


def det(a: DualVec3, b: DualVec3, c: DualVec3) -> DualScalar:
    """Dual triple product ⟨a, b ∧ c⟩."""
    return dot(a, cross(b, c))


def norm(a: DualVec3) -> DualScalar:
    """‖a‖ + ε⟨a, a*⟩/‖a‖."""
    r = math.sqrt(_rdot(a.real, a.real))
    if r == 0:
        raise ZeroRealPart("norm of a dual vector with zero real part")
    return DualScalar(r, _rdot(a.real, a.dual) / r)


def normalize(a: DualVec3) -> DualVec3:
    return smul(1 / norm(a), a)


def _check_unit(v, label):
    n = norm(v)
    if abs(n.real - 1.0) > UNIT_TOL or abs(n.dual) > UNIT_TOL:
        raise NotUnit(f"{label} is not a unit dual vector (norm {n!r})")


def dual_angle(a: DualVec3, b: DualVec3) -> DualAngle:
    """Dual angle Φ between unit dual vectors, from ⟨a, b⟩ = cos Φ."""
    _check_unit(a, "first argument")
    _check_unit(b, "second argument")
    c = dot(a, b)
    if abs(c.real) >= 1.0 - 1e-15:
        raise DegenerateAngle("real parts are parallel")
    return angle_from_cosine(c)
