"""Dual Frenet apparatus: frame, curvature, torsion and Darboux vector."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import dual as dl
from .dual import DualAngle, DualScalar
from .errors import DegenerateCurve, DomainError, NonInvertible, NotUnitSpeed, ZeroRealPart
from .jets import MAX_ORDER, VecJet, eval_curve, fd_derivative
from .jets import sqrt as jsqrt
from .vectors import UNIT_TOL, DualVec3, cross, dot, norm, normalize

__all__ = [
    "FrenetApparatus", "SplitApparatus",
    "frenet_general", "frenet_unit_speed", "frenet_at",
    "frenet_residuals", "darboux_residuals", "split_residuals",
    "split", "recombine", "darboux_angle", "is_unit_speed",
]

# ‖α′∧α″‖ below this fraction of ‖α′‖² counts as an inflection
_CURVATURE_FLOOR = 1e-12


@dataclass(frozen=True)
class FrenetApparatus:
    T: DualVec3
    N: DualVec3
    B: DualVec3
    kappa: DualScalar
    tau: DualScalar
    W: DualVec3
    kappa_prime: DualScalar | None = None
    tau_prime: DualScalar | None = None
    s: float | None = None
    unit_speed: bool = False
    speed: DualScalar = dl.ONE


@dataclass(frozen=True)
class SplitApparatus:
    """Real and ε components of a :class:`FrenetApparatus`."""

    t: tuple
    n: tuple
    b: tuple
    t_star: tuple
    n_star: tuple
    b_star: tuple
    k1: float
    k2: float
    k1_star: float
    k2_star: float
    w: tuple
    w_star: tuple
    k1_prime: float | None = None
    k1_prime_star: float | None = None
    k2_prime: float | None = None
    k2_prime_star: float | None = None
    s: float | None = None
    unit_speed: bool = False
    speed: tuple = (1.0, 0.0)


def _derivative_jets(g: VecJet):
    if g.order < 3:
        raise ValueError(f"Frenet apparatus needs a jet of order >= 3, got {g.order}")
    d1 = g.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()
    # one more order (α⁗) buys κ′ and τ′
    k = 1 if g.order >= MAX_ORDER else 0
    return d1.truncate(k), d2.truncate(k), d3.truncate(k), k


def _slope(jet, k):
    return jet.c[1] if k else None


def frenet_general(g: VecJet, s: float | None = None) -> FrenetApparatus:
    """Apparatus of an arbitrarily parameterized dual curve from its jets.

    κ = ‖α′∧α″‖/‖α′‖³ and τ = det(α′, α″, α‴)/‖α′∧α″‖², evaluated in jet
    arithmetic so that an order-4 input also yields κ′ and τ′.
    """
    a1, a2, a3, k = _derivative_jets(g)
    v = a1.at(0)
    speed2 = dot(v, v).real
    if speed2 == 0:
        raise DegenerateCurve("vanishing speed: α′ has zero real part")
    c = a1.cross(a2)
    c0 = c.at(0)
    if dot(c0, c0).real <= (_CURVATURE_FLOOR * speed2) ** 2:
        raise DegenerateCurve("vanishing curvature: α′ ∧ α″ has zero real part")
    try:
        speed = a1.norm()
        kappa = c.norm() / speed**3
        tau = a1.dot(a2.cross(a3)) / c.dot(c)
        T = normalize(v)
        B = normalize(c0)
    except (ZeroRealPart, NonInvertible, DomainError) as exc:
        raise DegenerateCurve(str(exc)) from exc
    N = cross(B, T)
    kap, tor = kappa.c[0], tau.c[0]
    return FrenetApparatus(
        T=T, N=N, B=B, kappa=kap, tau=tor, W=T * tor + B * kap,
        kappa_prime=_slope(kappa, k), tau_prime=_slope(tau, k),
        s=s, unit_speed=False, speed=speed.c[0],
    )


def is_unit_speed(g: VecJet, tol: float = UNIT_TOL) -> bool:
    n = norm(g.at(1)) if dot(g.at(1), g.at(1)).real > 0 else None
    return n is not None and abs(n.real - 1.0) <= tol and abs(n.dual) <= tol


def frenet_unit_speed(g: VecJet, s: float | None = None,
                      tol: float = UNIT_TOL) -> FrenetApparatus:
    """Apparatus of a unit-speed dual curve: κ = √⟨T′,T′⟩, τ = det(T,T′,T″)/⟨T′,T′⟩."""
    if not is_unit_speed(g, tol):
        raise NotUnitSpeed(f"‖α′‖ differs from (1, 0) by more than {tol:g}")
    t, tp, tpp, k = _derivative_jets(g)
    kk = tp.dot(tp)
    if not kk.c[0].real > 0:
        raise DegenerateCurve("vanishing curvature: T′ has zero real part")
    try:
        kappa = jsqrt(kk)
        tau = t.dot(tp.cross(tpp)) / kk
    except (NonInvertible, DomainError) as exc:
        raise DegenerateCurve(str(exc)) from exc
    T = t.at(0)
    kap, tor = kappa.c[0], tau.c[0]
    N = tp.at(0) / kap
    B = cross(T, N)
    return FrenetApparatus(
        T=T, N=N, B=B, kappa=kap, tau=tor, W=T * tor + B * kap,
        kappa_prime=_slope(kappa, k), tau_prime=_slope(tau, k),
        s=s, unit_speed=True, speed=norm(T),
    )


def frenet_at(curve, s: float, order: int = MAX_ORDER, check_domain: bool = True,
              unit_speed: bool = False) -> FrenetApparatus:
    """Evaluate a curve's jets at ``s`` and build its apparatus."""
    g = eval_curve(curve, s, order=order, check_domain=check_domain)
    if unit_speed:
        return frenet_unit_speed(g, s=s)
    return frenet_general(g, s=s)


def darboux_angle(app: FrenetApparatus) -> DualAngle:
    """Dual angle Φ between W and B, from tan Φ = τ/κ.

    Equivalent to cos Φ = κ/√(κ²+τ²), sin Φ = τ/√(κ²+τ²); the real angle lies
    in (-π/2, π/2) because κ has positive real part.
    """
    if not app.kappa.real > 0:
        raise DegenerateCurve("darboux angle needs positive curvature")
    phi = dl.arctan(app.tau / app.kappa)
    return DualAngle(phi.real, phi.dual)


# ---------------------------------------------------------------------------
# split into real and dual parts


def split(app: FrenetApparatus) -> SplitApparatus:
    kp, tp = app.kappa_prime, app.tau_prime
    return SplitApparatus(
        t=app.T.real, n=app.N.real, b=app.B.real,
        t_star=app.T.dual, n_star=app.N.dual, b_star=app.B.dual,
        k1=app.kappa.real, k2=app.tau.real,
        k1_star=app.kappa.dual, k2_star=app.tau.dual,
        w=app.W.real, w_star=app.W.dual,
        k1_prime=None if kp is None else kp.real,
        k1_prime_star=None if kp is None else kp.dual,
        k2_prime=None if tp is None else tp.real,
        k2_prime_star=None if tp is None else tp.dual,
        s=app.s, unit_speed=app.unit_speed, speed=tuple(app.speed),
    )


def recombine(sp: SplitApparatus) -> FrenetApparatus:
    def opt(r, d):
        return None if r is None else DualScalar(r, d)

    return FrenetApparatus(
        T=DualVec3(sp.t, sp.t_star), N=DualVec3(sp.n, sp.n_star),
        B=DualVec3(sp.b, sp.b_star),
        kappa=DualScalar(sp.k1, sp.k1_star), tau=DualScalar(sp.k2, sp.k2_star),
        W=DualVec3(sp.w, sp.w_star),
        kappa_prime=opt(sp.k1_prime, sp.k1_prime_star),
        tau_prime=opt(sp.k2_prime, sp.k2_prime_star),
        s=sp.s, unit_speed=sp.unit_speed, speed=DualScalar(*sp.speed),
    )


# ---------------------------------------------------------------------------
# residual checks against finite differences of the frame fields


class FrameResiduals(NamedTuple):
    tangent: float
    normal: float
    binormal: float

    def max(self) -> float:
        return max(self)


def _frame_derivatives(curve, s, h):
    cache = {}

    def frame(x):
        if x not in cache:
            cache[x] = frenet_at(curve, x, order=3, check_domain=False)
        return cache[x]

    app = frame(s)
    # d/ds → derivative per unit (dual) arc length
    rate = 1 / app.speed

    def field(name):
        return fd_derivative(lambda x: getattr(frame(x), name), s, 1, h) * rate

    return app, field("T"), field("N"), field("B")


def frenet_residuals(curve, s: float, h: float | None = None) -> FrameResiduals:
    """‖T′ − κN‖, ‖N′ + κT − τB‖, ‖B′ + τN‖ with frame derivatives by finite differences.

    Derivatives are taken per unit arc length (the s-derivative divided by the
    dual speed ‖α̂′‖), so curves that are not unit speed are covered too. Each
    magnitude is the larger of the real and ε parts.
    """
    app, dT, dN, dB = _frame_derivatives(curve, s, h)
    k, t = app.kappa, app.tau
    return FrameResiduals(
        (dT - app.N * k).magnitude(),
        (dN + app.T * k - app.B * t).magnitude(),
        (dB + app.N * t).magnitude(),
    )


def darboux_residuals(curve, s: float, h: float | None = None) -> FrameResiduals:
    """‖T′ − W∧T‖, ‖N′ − W∧N‖, ‖B′ − W∧B‖."""
    app, dT, dN, dB = _frame_derivatives(curve, s, h)
    W = app.W
    return FrameResiduals(
        (dT - cross(W, app.T)).magnitude(),
        (dN - cross(W, app.N)).magnitude(),
        (dB - cross(W, app.B)).magnitude(),
    )


class SplitResiduals(NamedTuple):
    """Residuals of the real system (t, n, b) and the dual system (t*, n*, b*)."""

    t: float
    n: float
    b: float
    t_star: float
    n_star: float
    b_star: float

    def max(self) -> float:
        return max(self)


def _lin(*terms):
    out = [0.0, 0.0, 0.0]
    for coef, vec in terms:
        for i in range(3):
            out[i] += coef * vec[i]
    return out


def _len(v):
    return sum(x * x for x in v) ** 0.5


def split_residuals(curve, s: float, h: float | None = None) -> SplitResiduals:
    """Residuals of the componentwise Frenet systems, written out field by field.

    The real system is t′ = k₁n, n′ = −k₁t + k₂b, b′ = −k₂n; the dual system
    adds the starred cross terms (t*′ = k₁n* + k₁*n and so on).
    """
    cache = {}

    def fields(x):
        if x not in cache:
            sp = split(frenet_at(curve, x, order=3, check_domain=False))
            cache[x] = (DualVec3(sp.t, sp.t_star), DualVec3(sp.n, sp.n_star),
                        DualVec3(sp.b, sp.b_star))
        return cache[x]

    # derivatives of the six real fields, packed pairwise into DualVec3 carriers
    sp = split(frenet_at(curve, s, order=3, check_domain=False))
    rate = 1 / DualScalar(*sp.speed)
    dt = fd_derivative(lambda x: fields(x)[0], s, 1, h) * rate
    dn = fd_derivative(lambda x: fields(x)[1], s, 1, h) * rate
    db = fd_derivative(lambda x: fields(x)[2], s, 1, h) * rate
    k1, k2, k1s, k2s = sp.k1, sp.k2, sp.k1_star, sp.k2_star
    return SplitResiduals(
        _len(_lin((1, dt.real), (-k1, sp.n))),
        _len(_lin((1, dn.real), (k1, sp.t), (-k2, sp.b))),
        _len(_lin((1, db.real), (k2, sp.n))),
        _len(_lin((1, dt.dual), (-k1, sp.n_star), (-k1s, sp.n))),
        _len(_lin((1, dn.dual), (k1, sp.t_star), (k1s, sp.t), (-k2, sp.b_star), (-k2s, sp.b))),
        _len(_lin((1, db.dual), (k2, sp.n_star), (k2s, sp.n))),
    )
