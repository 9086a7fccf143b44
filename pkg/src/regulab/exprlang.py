"""One-variable expression parser and third-order jet evaluation.

Grammar: standard infix with precedence ^ > unary- > *,/ > +,- and
parentheses; functions exp, ln, sin, cos, tanh, sqrt; the constant pi; one
free variable fixed at parse time.  Exponents of ^ must be constant.

Evaluation propagates truncated Taylor jets, so first through third
derivatives come out exact to rounding -- no finite differencing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import DomainError, ExpressionSyntaxError, UnknownIdentifier

__all__ = ["Expression", "Jet3", "parse", "eval_jet3"]

FUNCTIONS = ("exp", "ln", "sin", "cos", "tanh", "sqrt")


# --- AST ---------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: float


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


Node = Union[Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call]

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4, Const: 5, Var: 5, Call: 5}


def _to_text(node: Node, variable: str) -> str:
    def wrap(child: Node, min_prec: int) -> str:
        text = _to_text(child, variable)
        return f"({text})" if _PREC[type(child)] < min_prec else text

    if isinstance(node, Const):
        return repr(node.value)
    if isinstance(node, Var):
        return variable
    if isinstance(node, Neg):
        return "-" + wrap(node.arg, 3)
    if isinstance(node, Add):
        return f"{wrap(node.left, 1)} + {wrap(node.right, 2)}"
    if isinstance(node, Sub):
        return f"{wrap(node.left, 1)} - {wrap(node.right, 2)}"
    if isinstance(node, Mul):
        return f"{wrap(node.left, 2)}*{wrap(node.right, 3)}"
    if isinstance(node, Div):
        return f"{wrap(node.left, 2)}/{wrap(node.right, 3)}"
    if isinstance(node, Pow):
        return f"{wrap(node.base, 5)}^{repr(node.exponent)}"
    return f"{node.fn}({_to_text(node.arg, variable)})"


@dataclass(frozen=True)
class Expression:
    """Parsed expression in a single named variable."""

    root: Node
    variable: str

    def __str__(self) -> str:
        return _to_text(self.root, self.variable)


# --- tokenizer / parser -------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = len(text) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", bad)
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variable: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variable = variable

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ExpressionSyntaxError(f"expected '{op}'", pos)
        return self.next()

    def parse(self) -> Node:
        node = self.expression()
        kind, text, pos = self.peek()
        if kind != "eof":
            raise ExpressionSyntaxError(f"unexpected trailing input {text!r}", pos)
        return node

    def expression(self) -> Node:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.next()
                right = self.term()
                node = Add(node, right) if text == "+" else Sub(node, right)
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.next()
                right = self.factor()
                node = Mul(node, right) if text == "*" else Div(node, right)
            else:
                return node

    def factor(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.next()
            return Neg(self.factor())
        if kind == "op" and text == "+":
            self.next()
            return self.factor()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.next()
            exponent = self.factor()
            value = _const_value(exponent)
            if value is None:
                raise ExpressionSyntaxError("exponent must be a constant", pos)
            return Pow(base, value)
        return base

    def atom(self) -> Node:
        kind, text, pos = self.next()
        if kind == "num":
            return Const(float(text))
        if kind == "op" and text == "(":
            node = self.expression()
            self.expect_op(")")
            return node
        if kind == "ident":
            if text == self.variable:
                return Var()
            if text == "pi":
                return Const(math.pi)
            if text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expression()
                self.expect_op(")")
                return Call(text, arg)
            raise UnknownIdentifier(text, pos)
        raise ExpressionSyntaxError(
            "unexpected end of input" if kind == "eof" else f"unexpected {text!r}", pos
        )


def _const_value(node: Node) -> float | None:
    """Fold a variable-free subtree to its float value; None if it has the variable."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return None
    if isinstance(node, Neg):
        v = _const_value(node.arg)
        return None if v is None else -v
    if isinstance(node, (Add, Sub, Mul, Div)):
        a = _const_value(node.left)
        b = _const_value(node.right)
        if a is None or b is None:
            return None
        if isinstance(node, Add):
            return a + b
        if isinstance(node, Sub):
            return a - b
        if isinstance(node, Mul):
            return a * b
        return a / b
    if isinstance(node, Pow):
        b = _const_value(node.base)
        return None if b is None else b**node.exponent
    v = _const_value(node.arg)
    if v is None:
        return None
    fn = {"exp": math.exp, "ln": math.log, "sin": math.sin, "cos": math.cos,
          "tanh": math.tanh, "sqrt": math.sqrt}[node.fn]
    return fn(v)


def parse(text: str, variable: str) -> Expression:
    """Parse `text` as an expression in the single variable `variable`."""
    if not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return Expression(_Parser(text, variable).parse(), variable)


# --- jets ---------------------------------------------------------------


@dataclass(frozen=True)
class Jet3:
    """Value and first three derivatives at a point."""

    f: float
    d1: float
    d2: float
    d3: float


# Internal representation: Taylor coefficients (c0, c1, c2, c3),
# c_k = f^(k)/k!, which keeps products and compositions short.
_TC = tuple[float, float, float, float]


def _mul(a: _TC, b: _TC) -> _TC:
    return (
        a[0] * b[0],
        a[0] * b[1] + a[1] * b[0],
        a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
        a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
    )


def _div(a: _TC, b: _TC, where: str) -> _TC:
    if b[0] == 0.0:
        raise DomainError(f"division by zero in '{where}'")
    d0 = a[0] / b[0]
    d1 = (a[1] - d0 * b[1]) / b[0]
    d2 = (a[2] - d0 * b[2] - d1 * b[1]) / b[0]
    d3 = (a[3] - d0 * b[3] - d1 * b[2] - d2 * b[1]) / b[0]
    return (d0, d1, d2, d3)


def _compose(f0: float, f1: float, f2: float, f3: float, u: _TC) -> _TC:
    """Taylor coefficients of F(u) from derivatives of F at u's value."""
    p = (0.0, u[1], u[2], u[3])
    p2 = _mul(p, p)
    p3 = _mul(p2, p)
    return (
        f0 + f2 / 2.0 * p2[0] + f3 / 6.0 * p3[0],
        f1 * p[1] + f2 / 2.0 * p2[1] + f3 / 6.0 * p3[1],
        f1 * p[2] + f2 / 2.0 * p2[2] + f3 / 6.0 * p3[2],
        f1 * p[3] + f2 / 2.0 * p2[3] + f3 / 6.0 * p3[3],
    )


def _pow(base: _TC, p: float, where: str) -> _TC:
    if p == round(p) and abs(p) <= 64:
        n = int(round(p))
        if n < 0:
            return _div((1.0, 0.0, 0.0, 0.0), _pow(base, float(-n), where), where)
        out = (1.0, 0.0, 0.0, 0.0)
        for _ in range(n):
            out = _mul(out, base)
        return out
    x = base[0]
    if x <= 0.0:
        raise DomainError(f"non-integer power of non-positive base in '{where}'")
    return _compose(
        x**p,
        p * x ** (p - 1.0),
        p * (p - 1.0) * x ** (p - 2.0),
        p * (p - 1.0) * (p - 2.0) * x ** (p - 3.0),
        base,
    )


def _call(fn: str, u: _TC, where: str) -> _TC:
    x = u[0]
    if fn == "exp":
        e = math.exp(x)
        return _compose(e, e, e, e, u)
    if fn == "ln":
        if x <= 0.0:
            raise DomainError(f"ln of non-positive value in '{where}'")
        return _compose(math.log(x), 1.0 / x, -1.0 / x**2, 2.0 / x**3, u)
    if fn == "sin":
        s, c = math.sin(x), math.cos(x)
        return _compose(s, c, -s, -c, u)
    if fn == "cos":
        s, c = math.sin(x), math.cos(x)
        return _compose(c, -s, -c, s, u)
    if fn == "tanh":
        th = math.tanh(x)
        sech2 = 1.0 - th * th
        return _compose(th, sech2, -2.0 * th * sech2, sech2 * (6.0 * th * th - 2.0), u)
    # sqrt
    if x <= 0.0:
        raise DomainError(f"sqrt of non-positive value in '{where}'")
    r = math.sqrt(x)
    return _compose(r, 0.5 / r, -0.25 / (x * r), 0.375 / (x * x * r), u)


def _eval(node: Node, at: _TC, variable: str) -> _TC:
    if isinstance(node, Const):
        return (node.value, 0.0, 0.0, 0.0)
    if isinstance(node, Var):
        return at
    if isinstance(node, Neg):
        a = _eval(node.arg, at, variable)
        return (-a[0], -a[1], -a[2], -a[3])
    if isinstance(node, Add):
        a = _eval(node.left, at, variable)
        b = _eval(node.right, at, variable)
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])
    if isinstance(node, Sub):
        a = _eval(node.left, at, variable)
        b = _eval(node.right, at, variable)
        return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])
    if isinstance(node, Mul):
        return _mul(_eval(node.left, at, variable), _eval(node.right, at, variable))
    if isinstance(node, Div):
        return _div(
            _eval(node.left, at, variable),
            _eval(node.right, at, variable),
            _to_text(node, variable),
        )
    if isinstance(node, Pow):
        return _pow(_eval(node.base, at, variable), node.exponent, _to_text(node, variable))
    return _call(node.fn, _eval(node.arg, at, variable), _to_text(node, variable))


def eval_jet3(expression: Expression, v: float) -> Jet3:
    """Evaluate the expression and its first three derivatives at v."""
    c = _eval(expression.root, (v, 1.0, 0.0, 0.0), expression.variable)
    return Jet3(c[0], c[1], 2.0 * c[2], 6.0 * c[3])
