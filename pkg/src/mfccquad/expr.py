"""A small expression language for amplitudes and oscillators.

Grammar (``^`` binds tightest and is right-associative; unary minus sits
between ``^`` and ``* /``; juxtaposition is not multiplication)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := primary ("^" unary)?
    primary := NUMBER | "x" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"

Expressions are evaluated over complex NumPy arrays so that any parsed
oscillator can be differentiated with the complex step. Principal branches
are used for ``sqrt``, ``log`` and non-integer powers; ``abs`` is the
complex modulus and therefore not complex-step safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ExprSyntaxError, UnknownIdentifierError

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
CONSTANTS = {"pi": np.pi, "e": np.e}

# exponents up to this size are expanded into multiplications
_MAX_INT_POWER = 64


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, Const, Neg, BinOp, Call]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), _byte_offset(text, pos)))
        pos = m.end()
    toks.append(_Tok("end", "", _byte_offset(text, len(text))))
    return toks


def _byte_offset(text, i):
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def _advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def _expect(self, text, what):
        if self.tok.text != text or self.tok.kind == "end":
            raise ExprSyntaxError(f"expected {what}, found {self._describe()}", self.tok.offset)
        return self._advance()

    def _describe(self):
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"expected operator or end of input, found {self._describe()}",
                                  self.tok.offset)
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self._advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            operand = self.unary()
            return Neg(operand) if op == "-" else operand
        return self.power()

    def power(self):
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self._advance()
            return BinOp("^", base, self.unary())
        return base

    def primary(self):
        t = self.tok
        if t.kind == "num":
            self._advance()
            return Num(float(t.text))
        if t.kind == "name":
            self._advance()
            if t.text in FUNCTIONS:
                self._expect("(", f"'(' after {t.text}")
                arg = self.expr()
                self._expect(")", "')'")
                return Call(t.text, arg)
            if t.text == "x":
                return Var()
            if t.text in CONSTANTS:
                return Const(t.text)
            raise UnknownIdentifierError(f"unknown identifier {t.text!r}", t.offset)
        if t.kind == "op" and t.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")", "')'")
            return node
        raise ExprSyntaxError(f"expected number, identifier or '(', found {self._describe()}",
                              t.offset)


def parse_expr(text: str) -> Node:
    """Parse ``text`` into an expression tree.

    Raises :class:`ExprSyntaxError` or :class:`UnknownIdentifierError`;
    both carry the byte offset of the offending token.
    """
    return _Parser(text).parse()


def to_text(node: Node) -> str:
    """Fully parenthesised source text that parses back to ``node``."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_text(node.operand)})"
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    return f"({to_text(node.left)} {node.op} {to_text(node.right)})"


def _int_power(base, n):
    result = np.ones_like(base)
    sq = base
    m = abs(n)
    while m:
        if m & 1:
            result = result * sq
        m >>= 1
        if m:
            sq = sq * sq
    return 1.0 / result if n < 0 else result


def _eval(node, x):
    if isinstance(node, Num):
        return np.full_like(x, node.value)
    if isinstance(node, Var):
        return x
    if isinstance(node, Const):
        return np.full_like(x, CONSTANTS[node.name])
    if isinstance(node, Neg):
        return -_eval(node.operand, x)
    if isinstance(node, Call):
        arg = _eval(node.arg, x)
        return np.asarray(FUNCTIONS[node.func](arg), dtype=complex)
    left = _eval(node.left, x)
    if node.op == "^" and isinstance(node.right, Num):
        p = node.right.value
        if p.is_integer() and abs(p) <= _MAX_INT_POWER:
            return _int_power(left, int(p))
    right = _eval(node.right, x)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        return left / right
    return np.power(left, right)


def eval_expr(node: Node, x):
    """Evaluate ``node`` at the complex scalar or array ``x``.

    Poles and overflow produce ``inf``/``nan`` in the result rather than an
    exception; the quadrature routines reject non-finite samples.
    """
    xa = np.asarray(x, dtype=complex)
    with np.errstate(all="ignore"):
        out = _eval(node, np.atleast_1d(xa))
    return out[0] if xa.ndim == 0 else out.reshape(xa.shape)


class Expression:
    """A parsed expression usable as ``f`` or ``g`` in the quadrature API."""

    def __init__(self, text: str):
        self.text = text
        self.ast = parse_expr(text)

    def __call__(self, x):
        return eval_expr(self.ast, x)

    def __repr__(self):
        return f"Expression({self.text!r})"
