"""Truncated Taylor jets over the dual numbers.

A :class:`Jet4` holds the value and the first derivatives (up to the fourth)
of a dual-scalar function of the real parameter ``s``. Coefficients are
derivatives, not Taylor coefficients: the jet of ``s**2`` at ``s = 3`` is
``(9, 6, 2, 0, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from numbers import Real
from typing import Callable, Protocol, Sequence

from . import dual as dl
from .dual import DualScalar, as_dual
from .errors import DomainError, EvalError, NonInvertible, OutOfDomain
from .vectors import DualVec3

__all__ = [
    "MAX_ORDER", "Jet4", "VecJet", "AnalyticFunction",
    "SIN", "COS", "TAN", "SQRT", "power",
    "jet_add", "jet_mul", "jet_div", "jet_compose",
    "sin", "cos", "tan", "sqrt",
    "DualCurve", "FunctionCurve", "eval_curve", "curve_point",
    "fd_derivative", "fd_oracle", "default_step",
]

MAX_ORDER = 4


class Jet4:
    """Derivatives ``c[0..n]`` (n ≤ 4) of a dual-scalar function at a point."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        c = tuple(as_dual(x) for x in coeffs)
        if not 1 <= len(c) <= MAX_ORDER + 1:
            raise ValueError(f"jet needs 1..{MAX_ORDER + 1} coefficients, got {len(c)}")
        self.c = c

    @classmethod
    def variable(cls, s, order=MAX_ORDER):
        """Jet of the identity map at ``s``."""
        return cls([s, 1.0] + [0.0] * (order - 1) if order >= 1 else [s])

    @classmethod
    def constant(cls, value, order=MAX_ORDER):
        value = as_dual(value)
        zero = DualScalar(0 * value.real, 0 * value.dual)
        return cls([value] + [zero] * order)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @property
    def value(self) -> DualScalar:
        return self.c[0]

    def derivative(self) -> "Jet4":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        return Jet4(self.c[1:])

    def truncate(self, order: int) -> "Jet4":
        return Jet4(self.c[: order + 1])

    def _coerce(self, other):
        if isinstance(other, Jet4):
            return other
        if isinstance(other, (DualScalar, Real)):
            return Jet4.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return jet_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Jet4([-x for x in self.c])

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return jet_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return jet_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (DualScalar, Real)):
            return Jet4([x * other for x in self.c])
        if isinstance(other, Jet4):
            return jet_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (DualScalar, Real)):
            return Jet4([x / other for x in self.c])
        if isinstance(other, Jet4):
            return jet_div(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return jet_div(other, self)

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            return NotImplemented
        result = Jet4.constant(1.0, self.order)
        base = self
        while n:
            if n & 1:
                result = jet_mul(result, base)
            n >>= 1
            if n:
                base = jet_mul(base, base)
        return result

    def __eq__(self, other):
        if not isinstance(other, Jet4):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Jet4({list(self.c)!r})"


def jet_add(a: Jet4, b: Jet4) -> Jet4:
    n = min(len(a.c), len(b.c))
    return Jet4([a.c[i] + b.c[i] for i in range(n)])


def jet_mul(a: Jet4, b: Jet4) -> Jet4:
    """Leibniz rule (fg)^(n) = Σ C(n,k) f^(k) g^(n-k), truncated."""
    n = min(len(a.c), len(b.c))
    out = []
    for m in range(n):
        acc = a.c[0] * b.c[m]
        for k in range(1, m + 1):
            term = a.c[k] * b.c[m - k]
            acc = acc + term * comb(m, k)
        out.append(acc)
    return Jet4(out)


def jet_div(a: Jet4, b: Jet4) -> Jet4:
    """Quotient by solving the Leibniz convolution for the unknown jet."""
    if b.c[0].real == 0:
        raise NonInvertible("jet division by a jet with zero real leading coefficient")
    n = min(len(a.c), len(b.c))
    q: list[DualScalar] = []
    for m in range(n):
        acc = a.c[m]
        for k in range(m):
            acc = acc - q[k] * b.c[m - k] * comb(m, k)
        q.append(acc / b.c[0])
    return Jet4(q)


class AnalyticFunction:
    """A real function known through its derivatives up to order 5.

    ``derivs(x, n)`` returns ``[f(x), f'(x), ..., f^(n)(x)]`` and raises
    DomainError outside the domain. Order 5 is needed because the ε-slot of
    ``f^(4)`` at a dual point uses ``f^(5)``.
    """

    def __init__(self, name: str, derivs: Callable[[float, int], list]):
        self.name = name
        self.derivs = derivs

    def __repr__(self):
        return f"AnalyticFunction({self.name!r})"

    def at_dual(self, x: DualScalar, n: int) -> list[DualScalar]:
        d = self.derivs(x.real, n + 1)
        return [DualScalar(d[k], x.dual * d[k + 1]) for k in range(n + 1)]


def _sin_derivs(x, n):
    s, c = math.sin(x), math.cos(x)
    return [(s, c, -s, -c)[k % 4] for k in range(n + 1)]


def _cos_derivs(x, n):
    s, c = math.sin(x), math.cos(x)
    return [(c, -s, -c, s)[k % 4] for k in range(n + 1)]


def _tan_derivs(x, n):
    c = math.cos(x)
    if abs(c) < 1e-12:
        raise DomainError(f"tan is singular at {x!r}")
    t = math.tan(x)
    # d/dx p(tan x) = p'(tan x)·(1 + tan² x); p held as coefficient list
    poly = [0.0, 1.0]
    out = []
    for _ in range(n + 1):
        out.append(sum(a * t**i for i, a in enumerate(poly)))
        dp = [i * a for i, a in enumerate(poly)][1:] or [0.0]
        nxt = [0.0] * (len(dp) + 2)
        for i, a in enumerate(dp):
            nxt[i] += a
            nxt[i + 2] += a
        poly = nxt
    return out


def _power_derivs(p):
    integral = float(p).is_integer() and p >= 0

    def derivs(x, n):
        if not integral and not x > 0:
            raise DomainError(f"x**{p} needs a positive base, got {x!r}")
        out = []
        coef = 1.0
        for k in range(n + 1):
            e = p - k
            if integral and e < 0:
                out.append(0.0)
            else:
                out.append(coef * x**e)
            coef *= p - k
        return out

    return derivs


def _sqrt_derivs(x, n):
    if not x > 0:
        raise DomainError(f"sqrt needs a positive argument, got {x!r}")
    return _power_derivs(0.5)(x, n)


SIN = AnalyticFunction("sin", _sin_derivs)
COS = AnalyticFunction("cos", _cos_derivs)
TAN = AnalyticFunction("tan", _tan_derivs)
SQRT = AnalyticFunction("sqrt", _sqrt_derivs)


def power(p: float) -> AnalyticFunction:
    return AnalyticFunction(f"pow{p!r}", _power_derivs(p))


def jet_compose(f: AnalyticFunction, a: Jet4) -> Jet4:
    """Jet of ``f∘a``: Σ f^(k)(a₀)/k! · (a - a₀)^k, truncated."""
    n = a.order
    fk = f.at_dual(a.c[0], n)
    g = Jet4([a.c[0] * 0] + list(a.c[1:]))
    out = Jet4.constant(fk[0], n)
    g_pow = g
    for k in range(1, n + 1):
        out = out + g_pow * (fk[k] / math.factorial(k))
        if k < n:
            g_pow = jet_mul(g_pow, g)
    return out


def _polymorphic(f: AnalyticFunction, dual_fn, real_fn):
    def apply(x):
        if isinstance(x, Jet4):
            return jet_compose(f, x)
        if isinstance(x, DualScalar):
            return dual_fn(x)
        try:
            return real_fn(x)
        except ValueError as exc:
            raise DomainError(f"{f.name}({x!r}): {exc}") from None

    apply.__name__ = f.name
    apply.__doc__ = f"{f.name} on floats, dual numbers and jets."
    return apply


def _real_sqrt(x):
    if not x > 0:
        raise DomainError(f"sqrt needs a positive argument, got {x!r}")
    return math.sqrt(x)


def _real_tan(x):
    if abs(math.cos(x)) < 1e-12:
        raise DomainError(f"tan is singular at {x!r}")
    return math.tan(x)


sin = _polymorphic(SIN, dl.sin, math.sin)
cos = _polymorphic(COS, dl.cos, math.cos)
tan = _polymorphic(TAN, dl.tan, _real_tan)
sqrt = _polymorphic(SQRT, dl.sqrt, _real_sqrt)


# ---------------------------------------------------------------------------
# vector jets


@dataclass(frozen=True)
class VecJet:
    """Component jets of a dual curve germ α̂(s)."""

    x: Jet4
    y: Jet4
    z: Jet4

    @property
    def order(self) -> int:
        return min(self.x.order, self.y.order, self.z.order)

    def at(self, k: int) -> DualVec3:
        """The DualVec3 α̂^(k)(s)."""
        return DualVec3.from_components(self.x.c[k], self.y.c[k], self.z.c[k])

    def derivative(self) -> "VecJet":
        return VecJet(self.x.derivative(), self.y.derivative(), self.z.derivative())

    def truncate(self, order: int) -> "VecJet":
        return VecJet(self.x.truncate(order), self.y.truncate(order), self.z.truncate(order))

    def __add__(self, other: "VecJet") -> "VecJet":
        return VecJet(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "VecJet") -> "VecJet":
        return VecJet(self.x - other.x, self.y - other.y, self.z - other.z)

    def scale(self, k) -> "VecJet":
        return VecJet(self.x * k, self.y * k, self.z * k)

    def dot(self, other: "VecJet") -> Jet4:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "VecJet") -> "VecJet":
        return VecJet(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> Jet4:
        return sqrt(self.dot(self))

    def normalize(self) -> "VecJet":
        n = self.norm()
        return VecJet(self.x / n, self.y / n, self.z / n)


# ---------------------------------------------------------------------------
# curves


class DualCurve(Protocol):
    """Anything that maps a parameter to the real and dual coordinate triples.

    ``evaluate`` must accept a float, a DualScalar or a Jet4 and return
    ``(real_triple, dual_triple)`` of values of the same kind (or plain
    numbers for constant components).
    """

    name: str
    domain: tuple[float, float]

    def evaluate(self, t): ...


@dataclass(frozen=True)
class FunctionCurve:
    """A dual curve given by Python callables (used for tests and helpers)."""

    name: str
    real: tuple
    dual: tuple = (None, None, None)
    domain: tuple = (-math.inf, math.inf)

    def evaluate(self, t):
        def run(fns):
            return tuple(0.0 if f is None else f(t) for f in fns)

        try:
            return run(self.real), run(self.dual)
        except (DomainError, NonInvertible) as exc:
            raise EvalError(f"{self.name}: {exc}") from exc


def _in_domain(curve, s):
    lo, hi = curve.domain
    if not lo <= s <= hi:
        raise OutOfDomain(f"s = {s!r} is outside the domain [{lo!r}, {hi!r}] of {curve.name}")


def _slot(v, k):
    if isinstance(v, Jet4):
        return v.c[k].real if k < len(v.c) else 0.0
    if isinstance(v, DualScalar):
        return v.real if k == 0 else 0.0
    return float(v) if k == 0 else 0.0


def eval_curve(curve: DualCurve, s: float, order: int = MAX_ORDER,
               check_domain: bool = True) -> VecJet:
    """Jets of α̂ = α + εα* at ``s``; the dual part enters the ε-slots linearly."""
    if check_domain:
        _in_domain(curve, s)
    t = Jet4.variable(float(s), order)
    real, dual = curve.evaluate(t)
    comps = []
    for r, d in zip(real, dual):
        comps.append(Jet4([DualScalar(_slot(r, k), _slot(d, k)) for k in range(order + 1)]))
    return VecJet(*comps)


def curve_point(curve: DualCurve, s: float, check_domain: bool = False) -> DualVec3:
    """Plain pointwise evaluation of α̂(s) without jets."""
    if check_domain:
        _in_domain(curve, s)
    real, dual = curve.evaluate(float(s))
    return DualVec3(tuple(_slot(v, 0) for v in real), tuple(_slot(v, 0) for v in dual))


# ---------------------------------------------------------------------------
# finite-difference oracle (test fixture, never on the production path)

_STENCILS = {
    0: ([0], [1.0]),
    1: ([-1, 1], [-0.5, 0.5]),
    2: ([-1, 0, 1], [1.0, -2.0, 1.0]),
    3: ([-2, -1, 1, 2], [-0.5, 1.0, -1.0, 0.5]),
    4: ([-2, -1, 0, 1, 2], [1.0, -4.0, 6.0, -4.0, 1.0]),
}

# roundoff ~ 1e-16/h^k against truncation ~ h^6 after two Richardson steps
_BASE_STEP = {0: 0.0, 1: 1e-3, 2: 1e-2, 3: 1e-2, 4: 2e-2}


def default_step(s: float, k: int) -> float:
    return _BASE_STEP[k]


def _central(f, s, k, h):
    offsets, weights = _STENCILS[k]
    acc = None
    for o, w in zip(offsets, weights):
        term = f(s + o * h) * w
        acc = term if acc is None else acc + term
    return acc * (1.0 / h**k) if k else acc


def fd_derivative(f, s: float, k: int, h: float | None = None):
    """Central difference of order ``k`` with two Richardson steps (error O(h⁶)).

    ``f`` maps a float to anything supporting ``+`` and scaling by a float
    (DualVec3, DualScalar, float). Samples stay inside ``[s - 8h, s + 8h]``.
    """
    if k not in _STENCILS:
        raise ValueError(f"derivative order must be 0..4, got {k}")
    if k == 0:
        return f(s)
    if h is None:
        h = default_step(s, k)
    d1, d2, d4 = (_central(f, s, k, m * h) for m in (1, 2, 4))
    r1 = d1 * (4.0 / 3.0) + d2 * (-1.0 / 3.0)
    r2 = d2 * (4.0 / 3.0) + d4 * (-1.0 / 3.0)
    return r1 * (16.0 / 15.0) + r2 * (-1.0 / 15.0)


def fd_oracle(curve: DualCurve, s: float, k: int, h: float | None = None) -> DualVec3:
    """Finite-difference estimate of α̂^(k)(s), real and dual parts alike."""
    return fd_derivative(lambda x: curve_point(curve, x), s, k, h)
