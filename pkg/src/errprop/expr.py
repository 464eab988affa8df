"""Arithmetic expressions over named uncertain variables.

Grammar (EBNF):

    expr    := term   { ("+" | "-") term }
    term    := factor { ("*" | "/") factor }
    factor  := "-" factor | power
    power   := primary [ ("^" | "**") factor ]        (right-associative)
    primary := number | name | name "(" expr { "," expr } ")" | "(" expr ")"

Precedence: ^ binds tighter than unary minus, which binds tighter than
* and /, which bind tighter than + and -.  Numbers are exact constants.
Every syntactic occurrence of a variable is an independent measurement:
"x + x" and "2*x" propagate differently, on purpose.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import UncertainScalar
from .exceptions import LexError, ParseError, UnboundVariable, UnknownFunction
from .propagation import (
    BINARY_RULES,
    UNARY_RULES,
    propagate_binary,
    propagate_unary,
)

__all__ = [
    "Const",
    "Var",
    "Unary",
    "Binary",
    "ExprAst",
    "tokenize",
    "parse",
    "parse_expr",
    "render",
    "free_variables",
    "eval_uncertain",
    "eval_numeric",
]


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    fn: str
    arg: "ExprAst"


@dataclass(frozen=True)
class Binary:
    fn: str
    left: "ExprAst"
    right: "ExprAst"


ExprAst = Union[Const, Var, Unary, Binary]


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "name" | "op"
    text: str
    offset: int


_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9.]*)"
    r"|(?P<op>\*\*|[-+*/^(),])"
)


def tokenize(src: str) -> list[Token]:
    """Split an expression into number, identifier and operator tokens."""
    tokens = []
    i = 0
    while i < len(src):
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(src, i)
        if not m:
            raise LexError(f"unexpected character {src[i]!r}", i)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(), i))
        i = m.end()
    return tokens


_ADD_OPS = {"+": "add", "-": "sub"}
_MUL_OPS = {"*": "mul", "/": "div"}
_POW_OPS = ("^", "**")


class _Parser:
    def __init__(self, tokens: list[Token], src_len: int):
        self.tokens = tokens
        self.pos = 0
        self.src_len = src_len

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.src_len)
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t is None or t.text != text:
            found = t.text if t else "end of expression"
            where = t.offset if t else self.src_len
            raise ParseError(f"expected {text!r}, found {found!r}", where)
        return self.next()

    def expr(self) -> ExprAst:
        node = self.term()
        while (t := self.peek()) and t.text in _ADD_OPS:
            self.next()
            node = Binary(_ADD_OPS[t.text], node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while (t := self.peek()) and t.text in _MUL_OPS:
            self.next()
            node = Binary(_MUL_OPS[t.text], node, self.factor())
        return node

    def factor(self) -> ExprAst:
        t = self.peek()
        if t and t.text == "-":
            self.next()
            return Unary("neg", self.factor())
        if t and t.text == "+":
            self.next()
            return self.factor()
        return self.power()

    def power(self) -> ExprAst:
        base = self.primary()
        t = self.peek()
        if t and t.text in _POW_OPS:
            self.next()
            return Binary("pow", base, self.factor())
        return base

    def primary(self) -> ExprAst:
        t = self.next()
        if t.kind == "num":
            return Const(float(t.text))
        if t.kind == "name":
            nxt = self.peek()
            if nxt and nxt.text == "(":
                return self.call(t)
            return Var(t.text)
        if t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {t.text!r}", t.offset)

    def call(self, name: Token) -> ExprAst:
        self.expect("(")
        args = [self.expr()]
        while (t := self.peek()) and t.text == ",":
            self.next()
            args.append(self.expr())
        self.expect(")")
        if name.text in UNARY_RULES:
            if len(args) != 1:
                raise ParseError(
                    f"{name.text} takes 1 argument, got {len(args)}", name.offset
                )
            return Unary(name.text, args[0])
        if name.text in BINARY_RULES:
            if len(args) != 2:
                raise ParseError(
                    f"{name.text} takes 2 arguments, got {len(args)}", name.offset
                )
            return Binary(name.text, args[0], args[1])
        raise UnknownFunction(f"unknown function {name.text!r}")


def parse(tokens: list[Token], src_len: int = 0) -> ExprAst:
    """Parse a token stream into an AST."""
    p = _Parser(tokens, src_len)
    node = p.expr()
    if (t := p.peek()) is not None:
        raise ParseError(f"unexpected trailing token {t.text!r}", t.offset)
    return node


def parse_expr(src: str) -> ExprAst:
    """Tokenize and parse in one step."""
    return parse(tokenize(src), len(src))


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}
_OP_TEXT = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


def render(ast: ExprAst) -> str:
    """Canonical printer: parse(render(parse(s))) == parse(s)."""

    def go(node: ExprAst, parent_prec: int, right_side: bool) -> str:
        if isinstance(node, Const):
            return repr(node.value) if node.value != int(node.value) else str(int(node.value))
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Unary):
            if node.fn == "neg":
                s = f"-{go(node.arg, _PREC['neg'], True)}"
                prec = _PREC["neg"]
            else:
                return f"{node.fn}({go(node.arg, 0, False)})"
            return f"({s})" if prec < parent_prec else s
        if node.fn not in _OP_TEXT:
            return f"{node.fn}({go(node.left, 0, False)}, {go(node.right, 0, False)})"
        prec = _PREC[node.fn]
        right_assoc = node.fn == "pow"
        lhs = go(node.left, prec + (1 if right_assoc else 0), False)
        rhs = go(node.right, prec + (0 if right_assoc else 1), True)
        s = f"{lhs} {_OP_TEXT[node.fn]} {rhs}"
        return f"({s})" if prec < parent_prec or (prec == parent_prec and not right_side and right_assoc) else s

    return go(ast, 0, False)


def free_variables(ast: ExprAst) -> set[str]:
    if isinstance(ast, Const):
        return set()
    if isinstance(ast, Var):
        return {ast.name}
    if isinstance(ast, Unary):
        return free_variables(ast.arg)
    return free_variables(ast.left) | free_variables(ast.right)


def eval_uncertain(ast: ExprAst, env: dict) -> UncertainScalar:
    """Evaluate with uncertainty propagation at every node.

    Environment values may be UncertainScalar or plain numbers (exact).
    """
    if isinstance(ast, Const):
        return UncertainScalar(ast.value, 0.0)
    if isinstance(ast, Var):
        try:
            val = env[ast.name]
        except KeyError:
            raise UnboundVariable(ast.name) from None
        if isinstance(val, UncertainScalar):
            return val
        return UncertainScalar(float(val), 0.0)
    if isinstance(ast, Unary):
        arg = eval_uncertain(ast.arg, env)
        return propagate_unary(ast.fn, arg.as_vector())[0]
    left = eval_uncertain(ast.left, env)
    right = eval_uncertain(ast.right, env)
    return propagate_binary(ast.fn, left.as_vector(), right.as_vector())[0]


def eval_numeric(ast: ExprAst, env: dict):
    """Plain numeric evaluation (scalars or numpy arrays), same tree semantics."""
    if isinstance(ast, Const):
        return ast.value
    if isinstance(ast, Var):
        try:
            return env[ast.name]
        except KeyError:
            raise UnboundVariable(ast.name) from None
    with np.errstate(all="ignore"):
        if isinstance(ast, Unary):
            f = UNARY_RULES[ast.fn][0]
            return f(np.asarray(eval_numeric(ast.arg, env), dtype=float))
        f = BINARY_RULES[ast.fn][0]
        return f(
            np.asarray(eval_numeric(ast.left, env), dtype=float),
            np.asarray(eval_numeric(ast.right, env), dtype=float),
        )
