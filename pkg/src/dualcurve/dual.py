"""Dual numbers a + εa* with ε² = 0 and lifting of analytic functions.

Any analytic ``f`` extends to the dual numbers by first-order truncation of
its Taylor series, ``f(a + εa*) = f(a) + εa*·f'(a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

from .errors import DegenerateAngle, DomainError, NonInvertible

__all__ = [
    "DualScalar", "DualAngle", "EPS", "ONE", "ZERO",
    "add", "mul", "div", "lift",
    "sqrt", "sin", "cos", "tan", "arccos", "arctan",
    "angle_from_cosine", "as_dual",
]


class DualScalar:
    """Element ``real + ε·dual`` of the dual-number ring.

    Instances are treated as immutable values. Components may be any real
    number type (float, int, Fraction); arithmetic never coerces them.
    """

    __slots__ = ("real", "dual")

    def __init__(self, real, dual=0.0):
        self.real = real
        self.dual = dual

    def __add__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.real + other.real, self.dual + other.dual)
        if isinstance(other, Real):
            return DualScalar(self.real + other, self.dual)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.real - other.real, self.dual - other.dual)
        if isinstance(other, Real):
            return DualScalar(self.real - other, self.dual)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Real):
            return DualScalar(other - self.real, -self.dual)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(
                self.real * other.real,
                self.real * other.dual + self.dual * other.real,
            )
        if isinstance(other, Real):
            return DualScalar(self.real * other, self.dual * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DualScalar):
            b = other.real
            if b == 0:
                raise NonInvertible(f"division by pure-dual number {other!r}")
            return DualScalar(
                self.real / b, (self.dual * b - self.real * other.dual) / (b * b)
            )
        if isinstance(other, Real):
            if other == 0:
                raise NonInvertible("division by zero")
            return DualScalar(self.real / other, self.dual / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Real):
            return DualScalar(other, 0 * other) / self
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            return NotImplemented
        # (a + εa*)^n = a^n + ε n a^(n-1) a*
        if n == 0:
            return DualScalar(1 + 0 * self.real, 0 * self.dual)
        return DualScalar(self.real**n, n * self.real ** (n - 1) * self.dual)

    def __neg__(self):
        return DualScalar(-self.real, -self.dual)

    def __pos__(self):
        return self

    def __abs__(self):
        # |x| is smooth away from 0; the sign of the real part decides the branch
        return -self if self.real < 0 else self

    def __eq__(self, other):
        if isinstance(other, DualScalar):
            return self.real == other.real and self.dual == other.dual
        if isinstance(other, Real):
            return self.real == other and self.dual == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.real, self.dual))

    def __iter__(self):
        yield self.real
        yield self.dual

    def __repr__(self):
        return f"DualScalar({self.real!r}, {self.dual!r})"

    def conjugate(self):
        return DualScalar(self.real, -self.dual)

    def magnitude(self):
        """Max-abs of the two components; used for error measurement."""
        return max(abs(self.real), abs(self.dual))

    def isclose(self, other, rel=1e-12, abs_tol=0.0):
        other = as_dual(other)
        scale = max(self.magnitude(), other.magnitude())
        tol = max(rel * scale, abs_tol)
        return (
            abs(self.real - other.real) <= tol and abs(self.dual - other.dual) <= tol
        )


EPS = DualScalar(0.0, 1.0)
ONE = DualScalar(1.0, 0.0)
ZERO = DualScalar(0.0, 0.0)


def as_dual(x) -> DualScalar:
    if isinstance(x, DualScalar):
        return x
    if isinstance(x, Real):
        return DualScalar(x, 0 * x)
    raise TypeError(f"cannot interpret {x!r} as a dual number")


def add(a: DualScalar, b: DualScalar) -> DualScalar:
    return as_dual(a) + as_dual(b)


def mul(a: DualScalar, b: DualScalar) -> DualScalar:
    return as_dual(a) * as_dual(b)


def div(a: DualScalar, b: DualScalar) -> DualScalar:
    """Unique ``c`` with ``c·b = a``; raises NonInvertible if ``b.real == 0``."""
    return as_dual(a) / as_dual(b)


def lift(f, fprime, a) -> DualScalar:
    """Extend ``f`` (with derivative ``fprime``) to the dual numbers."""
    a = as_dual(a)
    return DualScalar(f(a.real), a.dual * fprime(a.real))


def sqrt(a) -> DualScalar:
    a = as_dual(a)
    if not a.real > 0:
        raise DomainError(f"sqrt needs a positive real part, got {a.real!r}")
    r = math.sqrt(a.real)
    return DualScalar(r, a.dual / (2.0 * r))


def sin(a) -> DualScalar:
    return lift(math.sin, math.cos, a)


def cos(a) -> DualScalar:
    return lift(math.cos, lambda x: -math.sin(x), a)


def tan(a) -> DualScalar:
    a = as_dual(a)
    c = math.cos(a.real)
    if abs(c) < 1e-300:
        raise DomainError(f"tan is singular at {a.real!r}")
    return DualScalar(math.tan(a.real), a.dual / (c * c))


def arccos(a) -> DualScalar:
    a = as_dual(a)
    if not -1.0 < a.real < 1.0:
        raise DomainError(f"arccos needs |real| < 1, got {a.real!r}")
    return DualScalar(math.acos(a.real), -a.dual / math.sqrt(1.0 - a.real * a.real))


def arctan(a) -> DualScalar:
    a = as_dual(a)
    return DualScalar(math.atan(a.real), a.dual / (1.0 + a.real * a.real))


@dataclass(frozen=True)
class DualAngle:
    """Dual angle Φ = φ + εφ*; φ in radians, φ* the dual (distance) part."""

    phi: float
    phi_star: float

    def as_dual(self) -> DualScalar:
        return DualScalar(self.phi, self.phi_star)

    def cos(self) -> DualScalar:
        return cos(self.as_dual())

    def sin(self) -> DualScalar:
        return sin(self.as_dual())


def angle_from_cosine(c) -> DualAngle:
    """Invert ``cos Φ = c`` for Φ with real part in (0, π)."""
    c = as_dual(c)
    if not -1.0 < c.real < 1.0:
        raise DegenerateAngle(
            f"|cos φ| = {abs(c.real)!r} >= 1 leaves the dual part undetermined"
        )
    phi = math.acos(c.real)
    return DualAngle(phi, -c.dual / math.sin(phi))
