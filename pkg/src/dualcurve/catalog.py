"""Built-in curves used as fixtures by the verification suites and the CLI.

Every entry is written in the curve language and parsed, so the catalog also
exercises the parser. Dual variants of unit-speed curves are chosen so that
the dual curve stays unit speed (‖α′‖ = 1, ⟨α′, α*′⟩ = 0); ``helix_3_4_drift``
and the twisted cubic are the deliberate exceptions.
"""

from __future__ import annotations

import math

from .dsl import CurveAst, parse

__all__ = ["helix_source", "builtin_catalog", "get_curve", "catalog_names", "EXPECTED"]

# Closed-form (real, ε) curvature and torsion for curves where they are constant.
# Helix a, b: κ = a/c², τ = b/c². With dual part σB: κ − εστ, τ + εσκ.
# With dual part (0, 0, σs): κ* = −2σab/c³, τ* = σ(c² − 2b²)/c³ (the circle is a=1, b=0).
EXPECTED = {
    "helix_3_4": {"kappa": (0.12, 0.0), "tau": (0.16, 0.0)},
    "helix_5_12": {"kappa": (5 / 169, 0.0), "tau": (12 / 169, 0.0)},
    "helix_3_4_dual": {"kappa": (0.12, -0.08), "tau": (0.16, 0.06)},
    "helix_3_4_drift": {"kappa": (0.12, -0.096), "tau": (0.16, -0.028)},
    "circle": {"kappa": (1.0, 0.0), "tau": (0.0, 0.0)},
    "circle_dual": {"kappa": (1.0, 0.0), "tau": (0.0, 0.5)},
}


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def helix_source(a: int, b: int, sigma: float = 0.0, name: str | None = None) -> str:
    """Unit-speed circular helix of radius ``a`` and pitch parameter ``b``.

    With ``sigma`` nonzero the dual part is σ·B(s), which keeps the dual curve
    unit speed and makes it a dual helix with κ = κ₀ − εστ₀, τ = τ₀ + εσκ₀.
    """
    c = math.hypot(a, b)
    cs, an, bn = _num(c), _num(a), _num(b)
    name = name or (f"helix_{a}_{b}" + ("_dual" if sigma else ""))
    real = f"({an}*cos(s/{cs}), {an}*sin(s/{cs}), {bn}*s/{cs})"
    if sigma:
        sg = _num(sigma)
        dual = (f"({sg}*(-{bn}*cos(s/{cs})), {sg}*(-{bn}*sin(s/{cs})), "
                f"{sg}*{an}*s/{cs})")
    else:
        dual = "(0, 0, 0)"
    return (f"curve {name} {{\n    real = {real}\n    dual = {dual}\n"
            "    domain = [0, 6]\n}\n")


# unit speed, κ² = 1 + 4 sin² s, so τ/κ is not constant
_TANTRIX_REAL = "(cos(s)/2 - cos(3*s)/6, sin(s)/2 - sin(3*s)/6, sin(s))"
# σ·∫ (α′ ∧ e₃) ds with σ = 1/2: a non-rigid dual part orthogonal to α′
_TANTRIX_DUAL = (
    "(0.5*((s*sin(s) + cos(s))/2 - (s*sin(3*s)/3 + cos(3*s)/9)/2), "
    "0.5*((sin(s) - s*cos(s))/2 - (sin(3*s)/9 - s*cos(3*s)/3)/2), 0)"
)

_FIXED_SOURCES = [
    """curve helix_3_4_drift {
    real = (3*cos(s/5), 3*sin(s/5), 4*s/5)
    dual = (0, 0, 0.5*s)
    domain = [0, 6]
}
""",
    """curve circle {
    real = (cos(s), sin(s), 0)
    domain = [0, 6]
}
""",
    """curve circle_dual {
    real = (cos(s), sin(s), 0)
    dual = (0, 0, 0.5*s)
    domain = [0, 6]
}
""",
    """curve twisted_cubic {
    real = (s, s^2, s^3)
    domain = [1, 2]
}
""",
    """curve twisted_cubic_dual {
    real = (s, s^2, s^3)
    dual = (0, 0, 0.5*s)
    domain = [1, 2]
}
""",
    f"""curve tantrix_1_2 {{
    real = {_TANTRIX_REAL}
    domain = [0, 6]
}}
""",
    f"""curve tantrix_1_2_dual {{
    real = {_TANTRIX_REAL}
    dual = {_TANTRIX_DUAL}
    domain = [0, 6]
}}
""",
]


def _sources() -> list[str]:
    return [
        helix_source(3, 4),
        helix_source(5, 12),
        helix_source(3, 4, sigma=0.5),
        *_FIXED_SOURCES,
    ]


_CACHE: list[CurveAst] | None = None


def builtin_catalog() -> list[CurveAst]:
    global _CACHE
    if _CACHE is None:
        _CACHE = [parse(src) for src in _sources()]
    return list(_CACHE)


def catalog_names() -> list[str]:
    return [c.name for c in builtin_catalog()]


def get_curve(name: str) -> CurveAst:
    for c in builtin_catalog():
        if c.name == name:
            return c
    raise KeyError(name)
