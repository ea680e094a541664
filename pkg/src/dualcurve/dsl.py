"""A small language for dual curves.

A curve file holds one block::

    # circular helix, unit speed
    curve helix_3_4 {
        real   = (3*cos(s/5), 3*sin(s/5), 4*s/5)
        dual   = (0, 0, 0)
        domain = [0, 6]
    }

Expressions use the variable ``s``, the constant ``pi``, decimal literals,
``+ - * /``, ``^`` with a literal nonnegative integer exponent, and the
functions ``sin cos tan sqrt``. ``^`` binds tighter than unary minus, which
binds tighter than ``* /``, which bind tighter than ``+ -``. ``dual`` may be
omitted (all zero). Whitespace is insignificant and ``#`` starts a comment.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from numbers import Real

from . import jets
from .errors import (DomainError, EvalError, NonInvertible, ParseError,
                     ValidationError)

__all__ = [
    "Num", "Name", "Neg", "BinOp", "Pow", "Call", "CurveAst",
    "parse", "parse_expr", "pretty", "pretty_expr", "eval_ast", "eval_expr",
    "MAX_DEPTH", "FUNCTIONS",
]

MAX_DEPTH = 256
FUNCTIONS = {"sin": 1, "cos": 1, "tan": 1, "sqrt": 1}
CONSTANTS = {"pi": math.pi}
VARIABLE = "s"


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Node:
    line: int = field(default=0, compare=False, repr=False, kw_only=True)
    column: int = field(default=0, compare=False, repr=False, kw_only=True)
    depth: int = field(default=1, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Num(Node):
    value: float


@dataclass(frozen=True)
class Name(Node):
    id: str


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Call(Node):
    func: str
    args: tuple


@dataclass(frozen=True)
class CurveAst:
    """A validated curve definition; usable wherever a dual curve is expected."""

    name: str
    real_components: tuple
    dual_components: tuple
    domain: tuple

    def evaluate(self, x):
        if isinstance(x, Real):
            ev = eval_expr
        else:
            ev = _eval_generic
        return (tuple(ev(e, x) for e in self.real_components),
                tuple(ev(e, x) for e in self.dual_components))

    def __str__(self):
        return pretty(self)


# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),=\[\]{};])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str   # number | ident | op | eof
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError("unexpected character", line, pos - line_start + 1, source[pos])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("number", "ident", "op"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# parser (Pratt for expressions, recursive descent for the block)

_BINARY = {"+": 10, "-": 10, "*": 20, "/": 20}
_UNARY_BP = 30
_POW_BP = 40
_MAX_EXPONENT_DIGITS = 6


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0
        self.nesting = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, message, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.column, tok.text or "<end of input>")

    def expect(self, text, what=None):
        if self.tok.text != text or self.tok.kind == "eof":
            raise self.error(f"expected {what or repr(text)}")
        return self.advance()

    # -- expressions --------------------------------------------------------

    def node(self, cls, tok, *args):
        children = [a for a in args if isinstance(a, Node)]
        depth = 1 + max((c.depth for c in children), default=0)
        if cls is Call:
            depth = 1 + max((c.depth for c in args[1]), default=0)
        if depth > MAX_DEPTH:
            raise self.error(f"expression nested deeper than {MAX_DEPTH}", tok)
        return cls(*args, line=tok.line, column=tok.column, depth=depth)

    def expression(self, rbp=0) -> Node:
        self.nesting += 1
        if self.nesting > MAX_DEPTH:
            raise self.error(f"expression nested deeper than {MAX_DEPTH}")
        try:
            left = self.prefix()
            while True:
                t = self.tok
                if t.kind == "op" and t.text in _BINARY and _BINARY[t.text] > rbp:
                    self.advance()
                    right = self.expression(_BINARY[t.text])
                    left = self.node(BinOp, t, t.text, left, right)
                elif t.kind == "op" and t.text == "^" and _POW_BP > rbp:
                    prev = self.tokens[self.i - 1]
                    if isinstance(left, Pow) and prev.kind == "number":
                        raise self.error("chained '^' is ambiguous; add parentheses")
                    self.advance()
                    e = self.tok
                    if e.kind != "number" or not e.text.isdigit():
                        raise self.error("exponent must be a nonnegative integer literal")
                    if len(e.text) > _MAX_EXPONENT_DIGITS:
                        raise self.error("exponent too large")
                    self.advance()
                    left = self.node(Pow, t, left, int(e.text))
                else:
                    return left
        finally:
            self.nesting -= 1

    def prefix(self) -> Node:
        t = self.tok
        if t.kind == "number":
            self.advance()
            value = float(t.text)
            if not math.isfinite(value):
                raise self.error("numeric literal out of range", t)
            return self.node(Num, t, value)
        if t.kind == "ident":
            self.advance()
            if self.tok.text == "(":
                self.advance()
                args = []
                if self.tok.text != ")":
                    args.append(self.expression())
                    while self.tok.text == ",":
                        self.advance()
                        args.append(self.expression())
                if self.tok.text != ")":
                    raise self.error("expected ')' to close the argument list")
                self.advance()
                return self.node(Call, t, t.text, tuple(args))
            return self.node(Name, t, t.text)
        if t.kind == "op" and t.text == "(":
            self.advance()
            inner = self.expression()
            if self.tok.text != ")":
                raise self.error("expected ')' (unclosed parenthesis)")
            self.advance()
            return inner
        if t.kind == "op" and t.text in "-+" and t.text:
            self.advance()
            operand = self.expression(_UNARY_BP)
            return operand if t.text == "+" else self.node(Neg, t, operand)
        if t.kind == "eof":
            raise self.error("unexpected end of input, expected an expression")
        raise self.error("expected an expression")

    # -- block --------------------------------------------------------------

    def triple(self):
        self.expect("(", "'(' opening a coordinate triple")
        parts = [self.expression()]
        for _ in range(2):
            self.expect(",", "',' between coordinates (three are required)")
            parts.append(self.expression())
        self.expect(")", "')' closing a coordinate triple (exactly three coordinates)")
        return tuple(parts)

    def curve(self) -> CurveAst:
        kw = self.tok
        if kw.kind != "ident" or kw.text != "curve":
            raise self.error("expected 'curve' to start a definition")
        self.advance()
        name = self.tok
        if name.kind != "ident":
            raise self.error("expected a curve name")
        self.advance()
        self.expect("{", "'{' opening the curve block")
        fields: dict[str, tuple] = {}
        while self.tok.text != "}":
            key = self.tok
            if key.kind == "eof":
                raise self.error("unexpected end of input, expected '}'")
            if key.kind != "ident" or key.text not in ("real", "dual", "domain"):
                raise self.error("expected 'real', 'dual', 'domain' or '}'")
            if key.text in fields:
                raise self.error(f"duplicate field '{key.text}'", key)
            self.advance()
            self.expect("=", "'='")
            if key.text == "domain":
                self.expect("[", "'[' opening the domain")
                lo = self.expression()
                self.expect(",", "',' between domain bounds")
                hi = self.expression()
                self.expect("]", "']' closing the domain")
                fields["domain"] = (lo, hi, key)
            else:
                fields[key.text] = self.triple()
            while self.tok.text == ";":
                self.advance()
        close = self.advance()
        if self.tok.kind != "eof":
            raise self.error("unexpected text after the curve block")
        for required in ("real", "domain"):
            if required not in fields:
                raise self.error(f"curve block is missing '{required}'", close)
        zero = Num(0.0, line=close.line, column=close.column)
        real = fields["real"]
        dual = fields.get("dual", (zero, zero, zero))
        for e in real + dual:
            _validate(e)
        lo_e, hi_e, dom_tok = fields["domain"]
        lo, hi = _constant(lo_e), _constant(hi_e)
        if not lo < hi:
            raise ValidationError("domain must satisfy lo < hi", dom_tok.line, dom_tok.column,
                                  dom_tok.text)
        return CurveAst(name.text, real, dual, (lo, hi))


def _validate(node: Node) -> None:
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Name):
            if n.id != VARIABLE and n.id not in CONSTANTS:
                hint = " (did you mean a function call?)" if n.id in FUNCTIONS else ""
                raise ValidationError(f"unknown identifier '{n.id}'{hint}", n.line, n.column, n.id)
        elif isinstance(n, Call):
            if n.func not in FUNCTIONS:
                raise ValidationError(f"unknown function '{n.func}'", n.line, n.column, n.func)
            if len(n.args) != FUNCTIONS[n.func]:
                raise ValidationError(
                    f"{n.func} takes {FUNCTIONS[n.func]} argument(s), got {len(n.args)}",
                    n.line, n.column, n.func)
            stack.extend(n.args)
        elif isinstance(n, Neg):
            stack.append(n.operand)
        elif isinstance(n, BinOp):
            stack.extend((n.left, n.right))
        elif isinstance(n, Pow):
            stack.append(n.base)


def _constant(node: Node) -> float:
    _validate(node)
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Name) and n.id == VARIABLE:
            raise ValidationError("domain bounds must not depend on s", n.line, n.column, n.id)
        stack.extend(c for c in vars(n).values() if isinstance(c, Node))
        if isinstance(n, Call):
            stack.extend(n.args)
    try:
        value = eval_expr(node, 0.0)
    except EvalError as exc:
        raise ValidationError(f"domain bound: {exc.message}", node.line, node.column) from None
    return float(value)


def parse(source: str) -> CurveAst:
    """Parse and validate a curve block."""
    return _Parser(source).curve()


def parse_expr(source: str) -> Node:
    """Parse and validate a single expression in ``s``."""
    p = _Parser(source)
    e = p.expression()
    if p.tok.kind != "eof":
        raise p.error("unexpected token after expression")
    _validate(e)
    return e


# ---------------------------------------------------------------------------
# printing

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(n: Node) -> int:
    if isinstance(n, BinOp):
        return _PREC[n.op]
    if isinstance(n, Neg):
        return 3
    if isinstance(n, Pow):
        return 4
    return 5


def _fmt_number(v: float) -> str:
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def pretty_expr(n: Node) -> str:
    def wrap(child, min_prec):
        text = pretty_expr(child)
        return f"({text})" if _prec(child) < min_prec else text

    if isinstance(n, Num):
        return _fmt_number(n.value)
    if isinstance(n, Name):
        return n.id
    if isinstance(n, Call):
        return f"{n.func}({', '.join(pretty_expr(a) for a in n.args)})"
    if isinstance(n, Neg):
        return "-" + wrap(n.operand, 3)
    if isinstance(n, Pow):
        return f"{wrap(n.base, 5)}^{n.exponent}"
    if isinstance(n, BinOp):
        p = _PREC[n.op]
        return f"{wrap(n.left, p)}{n.op}{wrap(n.right, p + 1)}"
    raise TypeError(f"not an expression node: {n!r}")


def pretty(ast: CurveAst) -> str:
    def triple(es):
        return "(" + ", ".join(pretty_expr(e) for e in es) + ")"

    lo, hi = ast.domain
    return (
        f"curve {ast.name} {{\n"
        f"    real = {triple(ast.real_components)}\n"
        f"    dual = {triple(ast.dual_components)}\n"
        f"    domain = [{lo!r}, {hi!r}]\n"
        "}\n"
    )


# ---------------------------------------------------------------------------
# evaluation

_MATH = {"sin": math.sin, "cos": math.cos, "tan": jets.tan, "sqrt": jets.sqrt}
_POLY = {"sin": jets.sin, "cos": jets.cos, "tan": jets.tan, "sqrt": jets.sqrt}


def eval_expr(n: Node, s: float) -> float:
    """Plain floating-point evaluation (no jets), used as an oracle."""
    try:
        if isinstance(n, Num):
            return n.value
        if isinstance(n, Name):
            return s if n.id == VARIABLE else CONSTANTS[n.id]
        if isinstance(n, Neg):
            return -eval_expr(n.operand, s)
        if isinstance(n, BinOp):
            a, b = eval_expr(n.left, s), eval_expr(n.right, s)
            if n.op == "+":
                r = a + b
            elif n.op == "-":
                r = a - b
            elif n.op == "*":
                r = a * b
            else:
                r = a / b
        elif isinstance(n, Pow):
            r = eval_expr(n.base, s) ** n.exponent
        elif isinstance(n, Call):
            r = _MATH[n.func](eval_expr(n.args[0], s))
        else:
            raise TypeError(f"not an expression node: {n!r}")
    except EvalError:
        raise
    except (ZeroDivisionError, OverflowError, DomainError, ValueError) as exc:
        raise EvalError(str(exc) or type(exc).__name__, n.line, n.column) from None
    if not math.isfinite(r):
        raise EvalError("non-finite intermediate value", n.line, n.column)
    return r


def _eval_generic(n: Node, x):
    """Evaluation over DualScalar or Jet4 arguments."""
    try:
        if isinstance(n, Num):
            return n.value
        if isinstance(n, Name):
            return x if n.id == VARIABLE else CONSTANTS[n.id]
        if isinstance(n, Neg):
            return -_eval_generic(n.operand, x)
        if isinstance(n, BinOp):
            a, b = _eval_generic(n.left, x), _eval_generic(n.right, x)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            if n.op == "*":
                return a * b
            if isinstance(b, Real) and not isinstance(a, Real):
                if b == 0:
                    raise NonInvertible("division by zero")
            return a / b
        if isinstance(n, Pow):
            return _eval_generic(n.base, x) ** n.exponent
        if isinstance(n, Call):
            return _POLY[n.func](_eval_generic(n.args[0], x))
    except EvalError:
        raise
    except (NonInvertible, DomainError, ZeroDivisionError, OverflowError, ValueError) as exc:
        raise EvalError(str(exc) or type(exc).__name__, n.line, n.column) from None
    raise TypeError(f"not an expression node: {n!r}")


def eval_ast(ast: CurveAst, s: float, order: int = jets.MAX_ORDER) -> jets.VecJet:
    """Jets of the curve at ``s``; ``s`` must lie in the declared domain."""
    return jets.eval_curve(ast, s, order=order)
