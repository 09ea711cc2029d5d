"""Tests for MV-term parsing, evaluation and rewriting."""

import random
from fractions import Fraction as F

import pytest

from modules.errors import ArityError, TermSyntaxError
from modules.terms import (
    Binary,
    Const,
    Neg,
    Var,
    desugar,
    eval_term,
    join,
    oplus,
    otimes,
    parse_term,
    random_term,
    size,
    substitute,
    variables,
)


def test_parse_examples():
    """Test the basic grammar."""
    assert parse_term("x1 (+) x1", 1) == oplus(Var(1), Var(1))
    assert parse_term("~ 0", 1) == Neg(Const(0))
    assert parse_term("(x1 (-) x2) v 0", 2) == join(Binary("-", Var(1), Var(2)), Const(0))


def test_parse_precedence():
    """Test that ~ binds tightest and (+) loosest."""
    assert parse_term("x1 (+) x2 v x1", 2) == oplus(Var(1), join(Var(2), Var(1)))
    assert parse_term("~x1 (.) x2", 2) == otimes(Neg(Var(1)), Var(2))
    assert parse_term("x1 v x2 ^ x1", 2) == join(Var(1), Binary("^", Var(2), Var(1)))
    # left associative
    assert parse_term("x1 (+) x2 (+) 1", 2) == oplus(oplus(Var(1), Var(2)), Const(1))


def test_parse_errors_carry_positions():
    """Test error positions for bad characters and arity overflow."""
    with pytest.raises(TermSyntaxError) as excinfo:
        parse_term("x1 # x2", 2)
    assert excinfo.value.position == 3

    with pytest.raises(ArityError) as excinfo:
        parse_term("x1 (+) x3", 2)
    assert excinfo.value.position == 7

    with pytest.raises(TermSyntaxError) as excinfo:
        parse_term("x1 (+)", 1)
    assert excinfo.value.position == 6


def test_parse_errors_at_end_of_input():
    """Test that truncated terms report the end of the text."""
    for src in ["x1 (+)", "(x1 (+) x2", "~", "x1 ^ "]:
        with pytest.raises(TermSyntaxError) as excinfo:
            parse_term(src, 2)
        assert excinfo.value.position == len(src), src
        assert "end of input" in str(excinfo.value)


def test_str_parses_back():
    """Test that printed terms are valid input."""
    term = parse_term("~(x1 (-) x2) ^ x2 (.) x1", 2)
    assert parse_term(str(term), 2) == term


def test_eval_term():
    """Test direct evaluation in [0,1]."""
    assert eval_term(parse_term("x1 (+) x1", 1), (F(1, 3),)) == F(2, 3)
    assert eval_term(parse_term("~ 0", 1), (F(1, 2),)) == 1
    t = parse_term("(x1 (-) x2) v (x2 (-) x1)", 2)
    assert eval_term(t, (F(3, 4), F(1, 4))) == F(1, 2)


def test_desugar_uses_core_connectives():
    """Test that desugaring leaves only 0, 1, variables, ~ and (+) and keeps values."""
    t = parse_term("(x1 (.) x2) v (x1 ^ ~x2) (-) x1", 2)
    core = desugar(t)

    def connectives(term):
        if isinstance(term, Binary):
            return {term.op} | connectives(term.left) | connectives(term.right)
        if isinstance(term, Neg):
            return connectives(term.arg)
        return set()

    assert connectives(core) <= {"+"}
    for point in [(F(1, 3), F(1, 2)), (F(0), F(1)), (F(5, 7), F(2, 7))]:
        assert eval_term(core, point) == eval_term(t, point)


def test_substitute_and_variables():
    """Test variable substitution."""
    t = parse_term("x1 (-) x2", 2)
    assert substitute(t, {2: Var(1)}) == Binary("-", Var(1), Var(1))
    assert variables(t) == {1, 2}
    assert size(t) == 3


def test_random_terms_respect_arity():
    """Test that generated terms only use declared variables."""
    rng = random.Random(3)
    for _ in range(50):
        t = random_term(rng, 2, 4)
        assert variables(t) <= {1, 2}
        assert parse_term(str(t), 2) == t
