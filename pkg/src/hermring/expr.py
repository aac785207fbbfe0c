"""A small expression language over named forms.

Grammar (``^`` binds tighter than ``*`` and ``/``, which bind tighter than ``+`` and ``-``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?
    atom   := INTEGER | NAME | NAME "(" expr ")" | "(" expr ")"

Division is only by scalars, so ``1/691`` is a rational literal.  The call
forms are ``restrict(F)`` and ``Lift(h13)``, ``Lift(h15)``, ``Lift(h17)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .eisenlift import RECIPES, WeightMismatchError, f2, recipe_expand, theta_sq
from .genring import DEFINITIONS, GeneratorLedger
from .igusa import SIEGEL_PRODUCTS, IGUSA_NAMES, IgusaLedger
from .series import HermitianSeries, _Series, restrict_to_siegel

__all__ = [
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "ExprTypeError",
    "Num",
    "Name",
    "Call",
    "BinOp",
    "Neg",
    "parse",
    "Evaluator",
    "evaluate",
]


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownIdentifierError(ValueError):
    pass


class ExprTypeError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {expected}, found {found}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return Num(Fraction(int(value)))
        if kind == "name":
            self.take()
            if self.peek()[0] == "(":
                self.take()
                arg = self.expr()
                self.take(")")
                return Call(value, arg)
            return Name(value)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        found = "end of input" if kind == "end" else repr(value)
        raise ExprSyntaxError(f"unexpected {found}", pos)


def parse(text: str):
    p = _Parser(text)
    node = p.expr()
    p.take("end")
    return node


_SIEGEL_NAMES = set(IGUSA_NAMES) | set(SIEGEL_PRODUCTS)
_ELLIPTIC = {"theta2": theta_sq, "f2": f2}


class Evaluator:
    """Resolves identifiers against a Hermitian ledger (and its Siegel companion) at evaluation time."""

    def __init__(self, ledger: GeneratorLedger, elliptic_trunc: int | None = None):
        self.ledger = ledger
        self.igusa = IgusaLedger(ledger)
        self.elliptic_trunc = elliptic_trunc if elliptic_trunc is not None else ledger.trunc

    def lookup(self, name: str) -> _Series:
        if name in RECIPES:
            return recipe_expand(RECIPES[name], self.elliptic_trunc)
        if name in _ELLIPTIC:
            return _ELLIPTIC[name](self.elliptic_trunc)
        if name in DEFINITIONS or re.fullmatch(r"E\d+", name):
            return self.ledger[name]
        if name in _SIEGEL_NAMES:
            return self.igusa[name]
        raise UnknownIdentifierError(f"unknown identifier {name!r}")

    def __call__(self, node):
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Name):
            return self.lookup(node.id)
        if isinstance(node, Neg):
            return -self(node.operand)
        if isinstance(node, Call):
            return self.call(node)
        return self.binop(node)

    def call(self, node: Call):
        if node.func == "restrict":
            arg = self(node.arg)
            if not isinstance(arg, HermitianSeries):
                raise ExprTypeError("restrict() needs a Hermitian series")
            return restrict_to_siegel(arg)
        if node.func == "Lift":
            if not (isinstance(node.arg, Name) and node.arg.id in RECIPES):
                raise ExprTypeError("Lift() takes one of " + ", ".join(RECIPES))
            return self.ledger[f"Lift({node.arg.id})"]
        raise UnknownIdentifierError(f"unknown function {node.func!r}")

    def binop(self, node: BinOp):
        a, b = self(node.left), self(node.right)
        a_series, b_series = isinstance(a, _Series), isinstance(b, _Series)
        if node.op == "^":
            if b_series or Fraction(b).denominator != 1 or b < 0:
                raise ExprTypeError("exponents must be nonnegative integers")
            return a ** int(b)
        if node.op == "/":
            if b_series:
                raise ExprTypeError("division is only by scalars")
            if b == 0:
                raise ZeroDivisionError("division by zero")
            return a / b if a_series else Fraction(a) / b
        if node.op == "*":
            return a * b
        if a_series and b_series and type(a) is not type(b):
            raise ExprTypeError(f"cannot combine {a.kind} and {b.kind} series")
        _check_weights(a, b, node.op)
        return a + b if node.op == "+" else a - b


def _weight(x):
    return x.weight if isinstance(x, _Series) else 0


def _check_weights(a, b, op: str) -> None:
    wa, wb = _weight(a), _weight(b)
    if wa is None or wb is None:
        return
    if wa != wb:
        raise WeightMismatchError(f"weight mismatch in '{op}': {wa} vs {wb}")


def evaluate(text_or_node, ledger: GeneratorLedger, elliptic_trunc: int | None = None):
    node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
    return Evaluator(ledger, elliptic_trunc)(node)
