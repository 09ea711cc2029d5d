# modules/terms.py
"""MV-terms: abstract syntax, parsing, desugaring and evaluation on [0,1]."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from lark import Lark, Transformer
from lark.exceptions import UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from modules.errors import ArityError, TermSyntaxError

logger = logging.getLogger(__name__)

# "~" binds tightest, then (.) and (-), then ^, then v, then (+); all left-associative
GRAMMAR = r"""
?expr: join
     | expr "(+)" join      -> oplus

?join: meet
     | join "v" meet        -> vee

?meet: prod
     | meet "^" prod        -> wedge

?prod: unary
     | prod "(.)" unary     -> otimes
     | prod "(-)" unary     -> ominus

?unary: "~" unary           -> neg
      | atom

?atom: "0"                  -> zero
     | "1"                  -> one
     | VAR                  -> var
     | "(" expr ")"

VAR: "x" DIGIT+

%import common.DIGIT
%import common.WS
%ignore WS
"""

_parser = Lark(GRAMMAR, start="expr", parser="lalr")

OPS = {
    "+": "(+)",
    ".": "(.)",
    "-": "(-)",
    "v": "v",
    "^": "^",
}


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Neg:
    arg: object

    def __str__(self) -> str:
        return f"~{self.arg}"


@dataclass(frozen=True)
class Binary:
    """A binary connective: "+" (oplus), "." (otimes), "-" (truncated minus), "v" (join), "^" (meet)."""

    op: str
    left: object
    right: object

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown connective {self.op!r}")

    def __str__(self) -> str:
        return f"({self.left} {OPS[self.op]} {self.right})"


ZERO = Const(0)
ONE = Const(1)


def oplus(a, b) -> Binary:
    return Binary("+", a, b)


def otimes(a, b) -> Binary:
    return Binary(".", a, b)


def ominus(a, b) -> Binary:
    return Binary("-", a, b)


def join(a, b) -> Binary:
    return Binary("v", a, b)


def meet(a, b) -> Binary:
    return Binary("^", a, b)


class _TermBuilder(Transformer):
    def __init__(self, arity: int):
        super().__init__()
        self.arity = arity

    def zero(self, _):
        return ZERO

    def one(self, _):
        return ONE

    def var(self, items):
        token = items[0]
        index = int(token[1:])
        if not 1 <= index <= self.arity:
            raise ArityError(f"variable {token} outside arity {self.arity}", token.start_pos)
        return Var(index)

    def neg(self, items):
        return Neg(items[0])

    def oplus(self, items):
        return Binary("+", *items)

    def otimes(self, items):
        return Binary(".", *items)

    def ominus(self, items):
        return Binary("-", *items)

    def vee(self, items):
        return Binary("v", *items)

    def wedge(self, items):
        return Binary("^", *items)


def _position(error, src: str) -> int:
    position = getattr(error, "pos_in_stream", None)
    if position is None or position < 0:
        return len(src)
    return position


def parse_term(src: str, arity: int):
    """Parse a term over the variables x1..x<arity>."""
    try:
        tree = _parser.parse(src)
        term = _TermBuilder(arity).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, TermSyntaxError):
            raise e.orig_exc from None
        raise
    except UnexpectedEOF:
        raise TermSyntaxError(f"unexpected end of input in {src!r}", len(src)) from None
    except UnexpectedToken as e:
        if e.token.type == "$END":
            raise TermSyntaxError(f"unexpected end of input in {src!r}", len(src)) from None
        raise TermSyntaxError(f"unexpected token {e.token!r} in {src!r}", _position(e, src)) from None
    except UnexpectedInput as e:
        raise TermSyntaxError(f"unexpected input in {src!r}", _position(e, src)) from None
    logger.debug(f"Parsed {src!r} as {term}")
    return term


def fold(term, *, const, var, neg, binary):
    """Structural recursion over a term, sharing work on repeated subterms."""
    memo = {}

    def go(t):
        if t in memo:
            return memo[t]
        if isinstance(t, Const):
            result = const(t.value)
        elif isinstance(t, Var):
            result = var(t.index)
        elif isinstance(t, Neg):
            result = neg(go(t.arg))
        elif isinstance(t, Binary):
            result = binary(t.op, go(t.left), go(t.right))
        else:
            raise TypeError(f"not a term: {t!r}")
        memo[t] = result
        return result

    return go(term)


def _mv(op: str, a: Fraction, b: Fraction) -> Fraction:
    if op == "+":
        return min(Fraction(1), a + b)
    if op == ".":
        return max(Fraction(0), a + b - 1)
    if op == "-":
        return max(Fraction(0), a - b)
    if op == "v":
        return max(a, b)
    return min(a, b)


def eval_term(term, point) -> Fraction:
    """Value of the term in the standard MV-algebra [0,1] at a point."""
    point = tuple(Fraction(c) for c in point)
    return fold(
        term,
        const=Fraction,
        var=lambda i: point[i - 1],
        neg=lambda a: 1 - a,
        binary=_mv,
    )


def _core(op: str, a, b):
    if op == "+":
        return Binary("+", a, b)
    if op == ".":
        return Neg(Binary("+", Neg(a), Neg(b)))
    if op == "-":
        return _core(".", a, Neg(b))
    if op == "v":
        return Binary("+", Neg(Binary("+", Neg(a), b)), b)
    return Neg(_core("v", Neg(a), Neg(b)))


def desugar(term):
    """Rewrite derived connectives into 0, ~ and (+) only.

    a (.) b = ~(~a (+) ~b); a (-) b = a (.) ~b; a v b = ~(~a (+) b) (+) b;
    a ^ b = ~(~a v ~b).
    """
    return fold(term, const=Const, var=Var, neg=Neg, binary=_core)


def substitute(term, mapping: dict):
    """Replace variables x_i by mapping[i]; unmapped variables stay."""
    return fold(term, const=Const, var=lambda i: mapping.get(i, Var(i)), neg=Neg, binary=Binary)


def variables(term) -> set:
    found = set()

    def var(i):
        found.add(i)
        return None

    fold(term, const=lambda v: None, var=var, neg=lambda a: None, binary=lambda op, a, b: None)
    return found


def size(term) -> int:
    return fold(term, const=lambda v: 1, var=lambda i: 1, neg=lambda a: a + 1, binary=lambda op, a, b: a + b + 1)


def random_term(rng: random.Random, arity: int, depth: int):
    """A random term of at most the given depth."""
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.85:
            return Var(rng.randint(1, arity))
        return Const(rng.randint(0, 1))
    if rng.random() < 0.25:
        return Neg(random_term(rng, arity, depth - 1))
    op = rng.choice(tuple(OPS))
    return Binary(op, random_term(rng, arity, depth - 1), random_term(rng, arity, depth - 1))
