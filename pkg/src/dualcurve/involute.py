"""Involutes of dual curves.

For a unit-speed evolute α with dual Frenet apparatus {T, N, B, κ, τ}, the
involute is β(s) = α(s) + λ(s)T(s) with λ = (c1 − s) + εc2. This module
evaluates β directly (jets of β fed through the general Frenet formulas) and
through the closed-form relations between the two apparatuses, so that the two
routes can be compared.

All quantities assume μ = c1 − s > 0, where λ and |λ| coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import dual as dl
from .dual import DualAngle, DualScalar
from .errors import DegenerateCurve, DualCurveError, OutOfDomain, ZeroRealPart
from .frenet import FrenetApparatus, darboux_angle, frenet_at, frenet_general
from .jets import MAX_ORDER, Jet4, VecJet, eval_curve
from .vectors import DualVec3, cross, normalize

__all__ = [
    "InvoluteParams", "InvolutePair",
    "involute_point", "involute_jet", "involute_distance",
    "involute_frame_predicted", "involute_frame_direct", "involute_apparatus",
    "involute_kappa_tau", "arc_rate", "phi_prime", "darboux_direction",
    "involute_darboux", "involute_darboux_direction", "involute_darboux_angle",
    "HelixReport", "helix_report", "CrossCheck", "split_crosschecks",
    "verification_grid",
]


@dataclass(frozen=True)
class InvoluteParams:
    """Integration constants of λ(s) = (c1 − s) + εc2."""

    c1: float
    c2: float = 0.0

    def mu(self, s: float) -> float:
        return self.c1 - s

    def lam(self, s: float, strict: bool = True) -> DualScalar:
        mu = self.c1 - s
        if strict and not mu > 0:
            raise OutOfDomain(f"μ = c1 − s = {mu!r} must be positive (c1 = {self.c1!r}, s = {s!r})")
        return DualScalar(mu, self.c2)


@dataclass(frozen=True)
class InvolutePair:
    evolute: object
    params: InvoluteParams
    name: str = field(default="")

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", f"{self.evolute.name}/involute")

    def apparatus(self, s: float, check_domain: bool = True) -> FrenetApparatus:
        """Evolute apparatus at ``s`` (order-4 jets, so κ′ and τ′ are present)."""
        return frenet_at(self.evolute, s, order=MAX_ORDER, check_domain=check_domain)


def verification_grid(domain, n: int = 50, c1: float | None = None,
                      margin: float = 1e-3) -> list[float]:
    """``n`` uniformly spaced points strictly inside ``domain``.

    Points within ``margin`` of ``c1`` (or beyond it) are dropped.
    """
    lo, hi = domain
    pts = [lo + (hi - lo) * (k + 1) / (n + 1) for k in range(n)]
    if c1 is not None:
        pts = [s for s in pts if c1 - s > margin]
    return pts


def _tangent(g: VecJet) -> DualVec3:
    try:
        return normalize(g.at(1))
    except ZeroRealPart as exc:
        raise DegenerateCurve("vanishing speed") from exc


def involute_point(pair: InvolutePair, s: float) -> DualVec3:
    """β(s) = α(s) ⊕ λ(s) ⊙ T(s)."""
    lam = pair.params.lam(s)
    g = eval_curve(pair.evolute, s, order=1)
    return g.at(0) + _tangent(g) * lam


def involute_jet(pair: InvolutePair, s: float, order: int = 3) -> VecJet:
    """Jets of β at ``s`` up to ``order`` (needs the evolute to order + 1)."""
    lam0 = pair.params.lam(s)
    g = eval_curve(pair.evolute, s, order=order + 1)
    try:
        t = g.derivative().normalize()
    except DualCurveError as exc:
        raise DegenerateCurve(str(exc)) from exc
    lam = Jet4([lam0, -1.0] + [0.0] * (order - 1))
    return g.truncate(order) + t.scale(lam)


def involute_distance(pair: InvolutePair, s: float) -> DualScalar:
    """‖β(s) − α(s)‖ = |c1 − s| + ε·sign(c1 − s)·c2 (requires c1 ≠ s)."""
    mu = pair.params.mu(s)
    if mu == 0:
        raise OutOfDomain("the involute meets its evolute at s = c1")
    return DualScalar(abs(mu), math.copysign(1.0, mu) * pair.params.c2)


def involute_apparatus(pair: InvolutePair, s: float) -> FrenetApparatus:
    """Apparatus of β computed from β's own jets, independent of the relations below."""
    return frenet_general(involute_jet(pair, s), s=s)


def involute_frame_direct(pair: InvolutePair, s: float):
    app = involute_apparatus(pair, s)
    return app.T, app.N, app.B


def involute_frame_predicted(app: FrenetApparatus):
    """(T̄, N̄, B̄) = (N, −cosΦ T + sinΦ B, sinΦ T + cosΦ B)."""
    phi = darboux_angle(app)
    c, s = phi.cos(), phi.sin()
    return app.N, app.T * (-c) + app.B * s, app.T * s + app.B * c


def _lam(app: FrenetApparatus, params: InvoluteParams) -> DualScalar:
    if app.s is None:
        raise ValueError("apparatus carries no parameter value")
    return params.lam(app.s)


def _primes(app):
    if app.kappa_prime is None or app.tau_prime is None:
        raise ValueError("apparatus lacks κ′/τ′; evaluate the evolute with order-4 jets")
    return app.kappa_prime, app.tau_prime


def involute_kappa_tau(app: FrenetApparatus, params: InvoluteParams):
    """κ̄ = √((κ²+τ²)/(λ²κ²)) and τ̄ = (κτ′ − κ′τ)/(λκ(κ²+τ²))."""
    lam = _lam(app, params)
    k, t = app.kappa, app.tau
    kp, tp = _primes(app)
    if not k.real > 0:
        raise DegenerateCurve("evolute curvature must be positive")
    q = k * k + t * t
    kappa_bar = dl.sqrt(q / (lam * lam * k * k))
    tau_bar = (k * tp - kp * t) / (lam * k * q)
    return kappa_bar, tau_bar


def arc_rate(app: FrenetApparatus, params: InvoluteParams) -> DualScalar:
    """ds*/ds = λκ."""
    return _lam(app, params) * app.kappa


def phi_prime(app: FrenetApparatus) -> DualScalar:
    """Φ′ = (τ/κ)′ κ²/(κ²+τ²), from tan Φ = τ/κ."""
    k, t = app.kappa, app.tau
    kp, tp = _primes(app)
    ratio_prime = (tp * k - t * kp) / (k * k)
    return ratio_prime * (k * k) / (k * k + t * t)


def darboux_direction(app: FrenetApparatus) -> DualVec3:
    """C = W/‖W‖ with ‖W‖ = √(κ²+τ²)."""
    return app.W / dl.sqrt(app.kappa * app.kappa + app.tau * app.tau)


def involute_darboux(app: FrenetApparatus, params: InvoluteParams) -> DualVec3:
    """W̄ = (W + Φ′N)/(λκ)."""
    lam = _lam(app, params)
    if not app.kappa.real > 0:
        raise DegenerateCurve("evolute curvature must be positive")
    return (app.W + app.N * phi_prime(app)) / (lam * app.kappa)


def involute_darboux_angle(app: FrenetApparatus, params: InvoluteParams):
    """sin and cos of the angle β̄ between W̄ and B̄.

    sin β̄ = Φ′/√(Φ′²+κ²+τ²), cos β̄ = √(κ²+τ²)/√(Φ′²+κ²+τ²). Returns the
    pair together with the DualAngle itself.
    """
    _lam(app, params)
    pp = phi_prime(app)
    q = app.kappa * app.kappa + app.tau * app.tau
    r = dl.sqrt(pp * pp + q)
    sin_b, cos_b = pp / r, dl.sqrt(q) / r
    ang = dl.arctan(pp / dl.sqrt(q))
    return sin_b, cos_b, DualAngle(ang.real, ang.dual)


def involute_darboux_direction(app: FrenetApparatus, params: InvoluteParams) -> DualVec3:
    """C̄ = sin β̄ · N + cos β̄ · C."""
    sin_b, cos_b, _ = involute_darboux_angle(app, params)
    return app.N * sin_b + darboux_direction(app) * cos_b


# ---------------------------------------------------------------------------
# helix evolutes and planar involutes


@dataclass
class HelixReport:
    """Maxima over a grid; a helix evolute has ``ratio_slope`` ≈ 0."""

    grid_size: int
    ratio_slope: float          # max |(τ/κ)′|
    tau_bar_formula: float      # max |τ̄| from the closed form
    tau_bar_direct: float       # max |τ̄| from β's jets (nan if unavailable)
    min_tau_bar_formula: float  # min |τ̄| (discrimination on non-helices)
    c_gap: float                # max ‖C − C̄‖
    w_b_cross: float            # max ‖normalize(W̄) ∧ B̄‖
    degenerate: list = field(default_factory=list)

    def is_helix(self, tol: float = 1e-9) -> bool:
        return self.ratio_slope <= tol


def helix_report(pair: InvolutePair, grid) -> HelixReport:
    ratio = tau_f = c_gap = wb = 0.0
    tau_d = 0.0
    tau_min = math.inf
    bad = []
    direct_ok = True
    for s in grid:
        try:
            app = pair.apparatus(s)
            kp, tp = _primes(app)
            k, t = app.kappa, app.tau
            ratio = max(ratio, ((tp * k - t * kp) / (k * k)).magnitude())
            _, tau_bar = involute_kappa_tau(app, pair.params)
            tau_f = max(tau_f, tau_bar.magnitude())
            tau_min = min(tau_min, tau_bar.magnitude())
            c_gap = max(c_gap, (darboux_direction(app) - involute_darboux_direction(app, pair.params)).magnitude())
            w_bar = involute_darboux(app, pair.params)
        except DualCurveError as exc:
            bad.append((s, str(exc)))
            continue
        try:
            beta = involute_apparatus(pair, s)
            tau_d = max(tau_d, beta.tau.magnitude())
            b_bar = beta.B
        except DualCurveError:
            direct_ok = False
            b_bar = involute_frame_predicted(app)[2]
        wb = max(wb, cross(normalize(w_bar), b_bar).magnitude())
    return HelixReport(
        grid_size=len(grid), ratio_slope=ratio, tau_bar_formula=tau_f,
        tau_bar_direct=tau_d if direct_ok else math.nan,
        min_tau_bar_formula=tau_min, c_gap=c_gap, w_b_cross=wb, degenerate=bad,
    )


# ---------------------------------------------------------------------------
# componentwise real/dual formulas versus ε-slot extraction


@dataclass(frozen=True)
class CrossCheck:
    name: str
    deviation: float | None
    note: str = ""

    def consistent(self, tol: float = 1e-9) -> bool | None:
        if self.deviation is None:
            return None
        return self.deviation <= tol


def _vec(*terms):
    out = [0.0, 0.0, 0.0]
    for coef, v in terms:
        for i in range(3):
            out[i] += coef * v[i]
    return out


def _vdiff(a, b):
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def _safe(fn):
    try:
        value = fn()
    except (ZeroDivisionError, ValueError):
        return None
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


_UNDEFINED_MIXED = "componentwise form mixes dual symbols into a real part; not evaluable"


def split_crosschecks(pair: InvolutePair, s: float) -> list[CrossCheck]:
    """Evaluate componentwise (real/ε) closed forms and compare each
    with the ε-slot extraction of the corresponding dual-arithmetic quantity.

    A nonzero deviation marks an inconsistent componentwise form, not a
    failure of the dual-arithmetic implementation; ``deviation=None`` means
    the form cannot be evaluated at this point.
    """
    app = pair.apparatus(s)
    mu, mu_s = pair.params.mu(s), pair.params.c2
    k1, k1s = app.kappa.real, app.kappa.dual
    k2, k2s = app.tau.real, app.tau.dual
    k1p, k1ps = app.kappa_prime.real, app.kappa_prime.dual
    k2p, k2ps = app.tau_prime.real, app.tau_prime.dual
    t, ts = app.T.real, app.T.dual
    n, ns = app.N.real, app.N.dual
    b, bs = app.B.real, app.B.dual
    q = k1 * k1 + k2 * k2
    rq = math.sqrt(q)

    phi = darboux_angle(app)
    ph, phs = phi.phi, phi.phi_star
    cph, sph = math.cos(ph), math.sin(ph)
    Tb, Nb, Bb = involute_frame_predicted(app)
    kappa_bar, tau_bar = involute_kappa_tau(app, pair.params)
    w_bar = involute_darboux(app, pair.params)
    pp = phi_prime(app)
    php, phps = pp.real, pp.dual
    C = darboux_direction(app)
    c_bar = involute_darboux_direction(app, pair.params)
    sin_b, cos_b, _ = involute_darboux_angle(app, pair.params)

    out: list[CrossCheck] = []

    def vec_check(name, form, truth, note=""):
        v = _safe(form)
        out.append(CrossCheck(name, None if v is None else _vdiff(v, truth),
                              note if v is not None else note or "undefined at this point"))

    def num_check(name, form, truth, note=""):
        v = _safe(form)
        out.append(CrossCheck(name, None if v is None else abs(v - truth),
                              note if v is not None else note or "undefined at this point"))

    # frame relations
    vec_check("frame.t_bar", lambda: list(n), Tb.real)
    vec_check("frame.n_bar", lambda: _vec((-cph, t), (sph, b)), Nb.real)
    vec_check("frame.b_bar", lambda: _vec((sph, t), (cph, b)), Bb.real)
    vec_check("frame.t_bar_star", lambda: list(ns), Tb.dual)
    vec_check("frame.n_bar_star",
              lambda: _vec((-cph, ts), (sph, bs), (phs * sph, t), (phs * cph, b)), Nb.dual)
    vec_check("frame.b_bar_star",
              lambda: _vec((sph, ts), (cph, bs), (phs * cph, t), (-phs * sph, b)), Bb.dual)

    # darboux angle of the evolute, componentwise forms without square roots
    num_check("angle.sin_phi", lambda: k2 / q, sph,
              "componentwise form lacks the square root in the denominator")
    num_check("angle.cos_phi_from_sine_display",
              lambda: (k1 * k1 + k2s - 2 * k1 * k2 * k1s - 2 * k2 * k2 * k2s) / (ph * q * q), cph,
              "componentwise form divides by the real angle")
    num_check("angle.cos_phi", lambda: k1 / q, cph,
              "componentwise form lacks the square root in the denominator")
    num_check("angle.sin_phi_from_cosine_display",
              lambda: (2 * k1 * k1 + k1s + 2 * k1 * k2 * k2s - k1 * k1 * k1s - k2 * k2 * k1s)
              / (ph * q * q), sph,
              "componentwise form divides by the real angle")

    # curvature and torsion of the involute
    num_check("curvature.k1_bar", lambda: rq / (mu * k1), kappa_bar.real)
    num_check("curvature.k1_bar_star",
              lambda: ((mu * mu * k1 * k1) * (2 * k1 * k1s + 2 * k2 * k2s)
                       - (2 * k1 * k1s * mu * mu) * q) / (2 * mu**3 * k1**3 * rq),
              kappa_bar.dual, "componentwise form omits the c2 contribution")
    num_check("torsion.k2_bar", lambda: (k1 * k2p - k2 * k1p) / (mu * k1 * q), tau_bar.real)
    den = mu * k1**3 + k1 * k2 * k2 * mu
    num_check("torsion.k2_bar_star",
              lambda: ((k1 * k2ps + k2p * k1s - k1p * k2s - k2 * k1ps) * den
                       - (2 * (k1 * k1s + k2 * k2s) * k1 * mu + q * (k1s * mu + k1 * mu_s))
                       * (k1 * k2p - k2 * k1p)) / den**2,
              tau_bar.dual)

    # darboux vector of the involute
    vec_check("darboux.w_bar", lambda: _vec((1 / (mu * k1), app.W.real), (php / (mu * k1), n)),
              w_bar.real)
    vec_check("darboux.w_bar_star",
              lambda: _vec((1 / (mu * k1), app.W.dual), (php / (mu * k1), n),
                           (phps / (mu * k1), n),
                           (-(mu * k1s + mu_s * k1) / (mu * k1) ** 2, app.W.real),
                           (-(mu * k1s + mu_s * k1) * php / (mu * k1) ** 2, n)),
              w_bar.dual, "componentwise form has φ′n where φ′n* is required")
    vec_check("darboux.w_bar_expanded",
              lambda: _vec((rq / (mu * k1) * sph, t), (rq / (mu * k1) * cph, b)), w_bar.real,
              "componentwise form drops the τ̄N̄ term")
    corr = (mu * k1 * (k1 * k1s + k2 * k2s) - q * (mu * k1s + mu_s * k1)) / (rq * mu * mu * k1 * k1)
    vec_check("darboux.w_bar_star_expanded",
              lambda: _vec((rq / (mu * k1) * sph, ts), (rq / (mu * k1) * cph, bs),
                           (rq / (mu * k1) * phs * cph, t), (-rq / (mu * k1) * phs * sph, b),
                           (corr * sph, t), (corr * cph, b)),
              w_bar.dual, "componentwise form drops the τ̄N̄ term")

    # unit darboux direction and its angle
    vec_check("direction.c_bar",
              lambda: _vec((php / math.sqrt(php + q), n), (rq / math.sqrt(php + q), C.real)),
              c_bar.real, "componentwise form has φ′ where φ′² is required")
    out.append(CrossCheck("direction.c_bar_star", None,
                          "componentwise form multiplies two vectors; not evaluable"))
    num_check("aux_angle.sin", lambda: php / math.sqrt(php + q), sin_b.real,
              "componentwise form has φ′ where φ′² is required")
    out.append(CrossCheck("aux_angle.cos_first_display", None, _UNDEFINED_MIXED))
    num_check("aux_angle.cos", lambda: math.sqrt(q / (php * php + q)), cos_b.real)
    out.append(CrossCheck("aux_angle.sin_second_display", None, _UNDEFINED_MIXED))
    return out
