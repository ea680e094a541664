"""Exception hierarchy shared by every module of the package."""


class DualCurveError(Exception):
    """Base class for all errors raised by dualcurve."""


class NonInvertible(DualCurveError, ZeroDivisionError):
    """Division by a dual quantity whose real part is zero."""


class DomainError(DualCurveError, ValueError):
    """A lifted function was evaluated outside its domain."""


class DegenerateAngle(DualCurveError, ValueError):
    """The dual angle cannot be recovered (sin of the real angle vanishes)."""


class ZeroRealPart(DualCurveError, ValueError):
    """A dual vector with vanishing real part was normalized or measured."""


class NotUnit(DualCurveError, ValueError):
    pass


class DegenerateCurve(DualCurveError, ValueError):
    """Vanishing speed or curvature where the Frenet apparatus needs it."""


class NotUnitSpeed(DualCurveError, ValueError):
    pass


class OutOfDomain(DualCurveError, ValueError):
    """A parameter value lies outside the admissible domain."""


class EvalError(DualCurveError):
    """Evaluation of a curve expression failed.

    ``line`` and ``column`` locate the offending sub-expression in the curve
    source when it is known.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class ParseError(DualCurveError):
    """Syntax error in a curve definition, with its source position."""

    def __init__(self, message, line, column, token=None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        shown = f" near {token!r}" if token else ""
        super().__init__(f"{message} at line {line}, column {column}{shown}")


class ValidationError(ParseError):
    """Well-formed syntax naming an unknown identifier or with wrong arity."""
