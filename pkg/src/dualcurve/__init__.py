"""Dual-number differential geometry of space curves.

Dual scalars and vectors, derivative jets over dual numbers, the dual Frenet
apparatus, involutes of dual curves, and a small curve-definition language.
"""

from .catalog import builtin_catalog, get_curve
from .dsl import CurveAst, eval_ast, parse, parse_expr, pretty
from .dual import DualAngle, DualScalar
from .errors import (DegenerateAngle, DegenerateCurve, DomainError, DualCurveError,
                     EvalError, NonInvertible, NotUnit, NotUnitSpeed, OutOfDomain,
                     ParseError, ValidationError, ZeroRealPart)
from .frenet import FrenetApparatus, SplitApparatus, darboux_angle, frenet_at, split
from .involute import InvolutePair, InvoluteParams, helix_report
from .jets import FunctionCurve, Jet4, VecJet, eval_curve, fd_oracle
from .vectors import DualVec3, cross, dot, dual_angle, norm, normalize

__all__ = [
    "DualScalar", "DualAngle", "DualVec3", "dot", "cross", "norm", "normalize",
    "dual_angle", "Jet4", "VecJet", "FunctionCurve", "eval_curve", "fd_oracle",
    "FrenetApparatus", "SplitApparatus", "frenet_at", "split", "darboux_angle",
    "InvoluteParams", "InvolutePair", "helix_report",
    "CurveAst", "parse", "parse_expr", "pretty", "eval_ast",
    "builtin_catalog", "get_curve",
    "DualCurveError", "NonInvertible", "DomainError", "DegenerateAngle", "ZeroRealPart",
    "NotUnit", "DegenerateCurve", "NotUnitSpeed", "OutOfDomain", "EvalError",
    "ParseError", "ValidationError",
]
