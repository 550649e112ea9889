"""Expression parsing and forward-mode differentiation.

Grammar (whitespace-insensitive; no implicit multiplication):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := unary ('^' factor)?          right-associative power
    unary  := '-'? atom
    atom   := NUMBER | 'x' | FUNC '(' expr ')' | '(' expr ')'

Powers require a constant exponent, which keeps every parsed expression
differentiable by the chain rule on dual numbers in a single pass.
Non-differentiable primitives (abs, floor, piecewise) are excluded by
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ParseError

FUNCTIONS = ("cos", "exp", "log", "sin", "sqrt")


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: float  # folded to a constant at parse time


@dataclass(frozen=True)
class Func:
    name: str
    arg: object


X = Var()


def to_source(node) -> str:
    """Fully parenthesized source form; reparses to an identical AST.

    The grammar has no negative literals, so negative constants print as
    a parenthesized unary minus.
    """
    if isinstance(node, Const):
        if math.copysign(1.0, node.value) < 0:
            return f"(-{repr(-node.value)})"
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Pow):
        return f"({to_source(node.base)} ^ {repr(node.exponent)})"
    if isinstance(node, Func):
        return f"{node.name}({to_source(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# tokenizer / parser

@dataclass(frozen=True)
class _Token:
    kind: str  # number | ident | op | end
    text: str
    offset: int


_OPERATOR_CHARS = "+-*/^()"


def _tokenize(src: str) -> list:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPERATOR_CHARS:
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < n and (src[j].isdigit() or src[j] == "."):
                j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            text = src[i:j]
            try:
                float(text)
            except ValueError:
                raise ParseError(f"malformed number {text!r}", i, ("number",))
            tokens.append(_Token("number", text, i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(_Token("ident", src[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i, ("number", "x", "function", "("))
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected):
        tok = self.peek()
        shown = tok.text if tok.kind != "end" else "end of input"
        raise ParseError(f"unexpected {shown!r}", tok.offset, expected)

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            self.fail(("+", "-", "*", "/", "^", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        node = self.unary()
        if self.peek().kind == "op" and self.peek().text == "^":
            caret = self.advance()
            exponent_node = self.factor()
            node = Pow(node, self._fold_constant(exponent_node, caret.offset))
        return node

    def unary(self):
        if self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            return Neg(self.atom())
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "x":
                return X
            if tok.text in FUNCTIONS:
                opening = self.peek()
                if not (opening.kind == "op" and opening.text == "("):
                    self.fail(("(",))
                self.advance()
                arg = self.expr()
                closing = self.peek()
                if not (closing.kind == "op" and closing.text == ")"):
                    self.fail((")",))
                self.advance()
                return Func(tok.text, arg)
            raise ParseError(
                f"unknown identifier {tok.text!r}", tok.offset,
                ("x",) + FUNCTIONS)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            closing = self.peek()
            if not (closing.kind == "op" and closing.text == ")"):
                self.fail((")",))
            self.advance()
            return node
        self.fail(("number", "x", "function", "("))

    def _fold_constant(self, node, offset: int) -> float:
        try:
            value = _eval_constant(node)
        except _NotConstant:
            raise ParseError("exponent must be a constant", offset, ("constant exponent",))
        if not math.isfinite(value):
            raise ParseError("exponent is not finite", offset, ("finite constant",))
        return value


class _NotConstant(Exception):
    pass


def _eval_constant(node) -> float:
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Neg):
        return -_eval_constant(node.operand)
    if isinstance(node, BinOp):
        a, b = _eval_constant(node.left), _eval_constant(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0:
            raise _NotConstant
        return a / b
    if isinstance(node, Pow):
        return _eval_constant(node.base) ** node.exponent
    raise _NotConstant


def parse(src: str):
    """Parse an expression in the variable x into an AST."""
    if not src or not src.strip():
        raise ParseError("empty expression", 0, ("expression",))
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# evaluation with dual numbers

@dataclass(frozen=True)
class DualValue:
    """First-order dual number: value and derivative carried together."""

    primal: float
    tangent: float


def _domain_error(message, node):
    return DomainError(f"{message} in {to_source(node)}")


def _require_finite(value: DualValue, node) -> DualValue:
    if not (math.isfinite(value.primal) and math.isfinite(value.tangent)):
        raise OverflowError(f"non-finite value from {to_source(node)}")
    return value


def _eval(node, x: float) -> DualValue:
    if isinstance(node, Const):
        return DualValue(node.value, 0.0)
    if isinstance(node, Var):
        return DualValue(x, 1.0)
    if isinstance(node, Neg):
        v = _eval(node.operand, x)
        return DualValue(-v.primal, -v.tangent)
    if isinstance(node, BinOp):
        a = _eval(node.left, x)
        b = _eval(node.right, x)
        if node.op == "+":
            out = DualValue(a.primal + b.primal, a.tangent + b.tangent)
        elif node.op == "-":
            out = DualValue(a.primal - b.primal, a.tangent - b.tangent)
        elif node.op == "*":
            out = DualValue(a.primal * b.primal,
                            a.primal * b.tangent + a.tangent * b.primal)
        else:
            if b.primal == 0:
                raise _domain_error("division by zero", node)
            out = DualValue(
                a.primal / b.primal,
                (a.tangent * b.primal - a.primal * b.tangent) / (b.primal * b.primal))
        return _require_finite(out, node)
    if isinstance(node, Pow):
        return _require_finite(_eval_pow(node, x), node)
    if isinstance(node, Func):
        return _require_finite(_eval_func(node, x), node)
    raise TypeError(f"not an expression node: {node!r}")


def _eval_pow(node: Pow, x: float) -> DualValue:
    base = _eval(node.base, x)
    c = node.exponent
    if c == 0:
        return DualValue(1.0, 0.0)
    if float(c).is_integer():
        ic = int(c)
        if base.primal == 0 and ic < 0:
            raise _domain_error("zero base with negative exponent", node)
        primal = base.primal ** ic
        if base.primal == 0:
            # d/dx x^1 = 1; higher integer powers have zero slope at 0
            scale = 1.0 if ic == 1 else 0.0
        else:
            scale = ic * base.primal ** (ic - 1)
        return DualValue(primal, scale * base.tangent)
    if base.primal <= 0:
        raise _domain_error("non-integer power of a non-positive base", node)
    primal = base.primal ** c
    return DualValue(primal, c * base.primal ** (c - 1.0) * base.tangent)


def _eval_func(node: Func, x: float) -> DualValue:
    arg = _eval(node.arg, x)
    v, t = arg.primal, arg.tangent
    if node.name == "sin":
        return DualValue(math.sin(v), math.cos(v) * t)
    if node.name == "cos":
        return DualValue(math.cos(v), -math.sin(v) * t)
    if node.name == "exp":
        try:
            e = math.exp(v)
        except OverflowError:
            raise OverflowError(f"non-finite value from {to_source(node)}")
        return DualValue(e, e * t)
    if node.name == "log":
        if v <= 0:
            raise _domain_error("log of a non-positive value", node)
        return DualValue(math.log(v), t / v)
    if node.name == "sqrt":
        if v < 0:
            raise _domain_error("sqrt of a negative value", node)
        if v == 0:
            raise _domain_error("sqrt derivative unbounded at zero", node)
        r = math.sqrt(v)
        return DualValue(r, t / (2.0 * r))
    raise ValueError(f"unknown function {node.name!r}")


def eval_dual(ast, x: float) -> DualValue:
    """Value and exact first derivative of the expression at x."""
    return _eval(ast, float(x))


def eval_primal(ast, x: float) -> float:
    return _eval(ast, float(x)).primal
