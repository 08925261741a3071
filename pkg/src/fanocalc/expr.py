"""Small expression language for intersection-ring computations.

Supports rational literals ("2", "5/3"), symbols with an optional prime
suffix (K, H, K', H', c1'), unary minus, sums, products and nonnegative
integer powers.  No implicit multiplication: "2H" is a syntax error, so
primed symbols never become ambiguous.  Precedence, tightest first:
^  unary -  *  binary +/-.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .chow import RingCtx, RingElem, intersection_degree

MAX_DEPTH = 64

_SYMBOL_START = set(string.ascii_letters)
_SYMBOL_CONT = set(string.ascii_letters + string.digits + "'")
_SINGLE = {"+": "plus", "-": "minus", "*": "star", "^": "caret",
           "(": "lparen", ")": "rparen"}


class ExprError(ValueError):
    """Syntax or evaluation error carrying a 1-based column position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"column {pos}: {message}")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str  # number, symbol, plus, minus, star, caret, lparen, rparen
    text: str
    pos: int  # 1-based column


# AST nodes ------------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: Fraction
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    child: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Lit, Sym, Neg, Add, Mul, Pow]


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        pos = i + 1
        if ch.isspace():
            i += 1
            continue
        if ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, pos))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            num = text[i:j]
            if j < len(text) and text[j] == "/":
                k = j + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise ExprError("expected digits after '/'", j + 2)
                denom = text[j + 1:k]
                if int(denom) == 0:
                    raise ExprError("zero denominator", j + 2)
                tokens.append(Token("number", f"{num}/{denom}", pos))
                i = k
            else:
                tokens.append(Token("number", num, pos))
                i = j
            continue
        if ch in _SYMBOL_START:
            j = i + 1
            while j < len(text) and text[j] in _SYMBOL_CONT:
                j += 1
            tokens.append(Token("symbol", text[i:j], pos))
            i = j
            continue
        raise ExprError(f"unknown character {ch!r}", pos)
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.index = 0
        self.depth = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            pos = last.pos + len(last.text) if last else 1
            raise ExprError("unexpected end of input", pos)
        self.index += 1
        return tok

    def _enter(self) -> None:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            tok = self.peek()
            raise ExprError("expression too deeply nested",
                            tok.pos if tok else 1)

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExprError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self) -> Node:
        self._enter()
        node = self.term()
        while (tok := self.peek()) and tok.kind in ("plus", "minus"):
            self.next()
            rhs = self.term()
            node = Add(node, rhs if tok.kind == "plus" else Neg(rhs))
        self.depth -= 1
        return node

    def term(self) -> Node:
        self._enter()
        node = self.factor()
        while (tok := self.peek()) and tok.kind == "star":
            self.next()
            node = Mul(node, self.factor())
        self.depth -= 1
        return node

    def factor(self) -> Node:
        self._enter()
        tok = self.peek()
        if tok and tok.kind == "minus":
            self.next()
            node: Node = Neg(self.factor())
        else:
            node = self.power()
        self.depth -= 1
        return node

    def power(self) -> Node:
        node = self.atom()
        while (tok := self.peek()) and tok.kind == "caret":
            self.next()
            etok = self.next()
            if etok.kind != "number" or "/" in etok.text:
                raise ExprError("exponent must be an integer literal", etok.pos)
            node = Pow(node, int(etok.text))
        return node

    def atom(self) -> Node:
        tok = self.next()
        if tok.kind == "number":
            return Lit(Fraction(tok.text), tok.pos)
        if tok.kind == "symbol":
            return Sym(tok.text, tok.pos)
        if tok.kind == "lparen":
            node = self.expr()
            closing = self.next()
            if closing.kind != "rparen":
                raise ExprError("expected ')'", closing.pos)
            return node
        raise ExprError(f"unexpected {tok.text!r}", tok.pos)


def parse(tokens: List[Token]) -> Node:
    if not tokens:
        raise ExprError("empty expression", 1)
    return _Parser(tokens).parse()


def parse_text(text: str) -> Node:
    return parse(tokenize(text))


def to_text(node: Node) -> str:
    """Pretty printer; parse(to_text(parse(s))) equals parse(s)."""

    def wrap(child: Node, *kinds) -> str:
        text = to_text(child)
        return f"({text})" if isinstance(child, kinds) else text

    if isinstance(node, Lit):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        # Unary minus binds below ^ but above *; Add and Mul children
        # would reassociate without parentheses.
        return "-" + wrap(node.child, Add, Mul)
    if isinstance(node, Add):
        if isinstance(node.right, Neg):
            return f"{to_text(node.left)} - {wrap(node.right.child, Add)}"
        return f"{to_text(node.left)} + {wrap(node.right, Add)}"
    if isinstance(node, Mul):
        return f"{wrap(node.left, Add)}*{wrap(node.right, Add, Mul)}"
    if isinstance(node, Pow):
        base = to_text(node.base)
        if not isinstance(node.base, (Sym, Lit)):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    raise TypeError(f"unknown node {node!r}")


# Evaluation -----------------------------------------------------------------

Value = Union[Fraction, RingElem]
Bindings = Dict[str, Value]


@dataclass(frozen=True)
class EvalResult:
    element: RingElem
    degree: Optional[Fraction]
    note: Optional[str] = None


def _lift(v: Value, ctx: RingCtx) -> RingElem:
    if isinstance(v, RingElem):
        return v
    return ctx.scalar(Fraction(v))


def _eval(node: Node, ctx: RingCtx, bindings: Bindings) -> Value:
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Sym):
        if node.name not in bindings:
            raise ExprError(f"unbound symbol {node.name!r}", node.pos)
        v = bindings[node.name]
        return v if isinstance(v, RingElem) else Fraction(v)
    if isinstance(node, Neg):
        v = _eval(node.child, ctx, bindings)
        return -v
    if isinstance(node, Add):
        a = _eval(node.left, ctx, bindings)
        b = _eval(node.right, ctx, bindings)
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a + b
        return _lift(a, ctx) + _lift(b, ctx)
    if isinstance(node, Mul):
        a = _eval(node.left, ctx, bindings)
        b = _eval(node.right, ctx, bindings)
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a * b
        if isinstance(a, Fraction):
            return b.scale(a)
        if isinstance(b, Fraction):
            return a.scale(b)
        return a * b
    if isinstance(node, Pow):
        v = _eval(node.base, ctx, bindings)
        if isinstance(v, Fraction):
            return v ** node.exponent
        return v ** node.exponent
    raise TypeError(f"unknown node {node!r}")


def evaluate(ast: Node, ctx: RingCtx, bindings: Bindings) -> EvalResult:
    """Evaluate to a normal-form ring element; when the result is
    homogeneous of top degree, also report its intersection degree."""
    value = _eval(ast, ctx, bindings)
    elem = _lift(value, ctx)
    degree = None
    note = None
    top = ctx.n + 1
    if not elem.is_zero() and elem.is_homogeneous(top):
        degree = intersection_degree(elem)
    if elem.is_zero() and not isinstance(value, Fraction):
        note = "result vanishes in the truncated ring"
    return EvalResult(elem, degree, note)


def evaluate_text(text: str, ctx: RingCtx, bindings: Bindings) -> EvalResult:
    return evaluate(parse_text(text), ctx, bindings)
