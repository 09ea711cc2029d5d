# modules/commands/options.py
"""Validated parsing of command-line values into exact objects."""
import click

from modules.errors import TermSyntaxError
from modules.terms import parse_term
from utils.helpers import parse_matrix, parse_point, parse_quadext


def term_option(text, arity, hint='-e'):
    try:
        return parse_term(text, arity)
    except TermSyntaxError as e:
        raise click.BadParameter(str(e), param_hint=hint)


def point_option(text, arity, hint='-p'):
    try:
        point = parse_point(text)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint=hint)
    if len(point) != arity:
        raise click.BadParameter(f"expected {arity} coordinates, got {len(point)}", param_hint=hint)
    if any(not 0 <= c <= 1 for c in point):
        raise click.BadParameter("coordinates must lie in [0,1]", param_hint=hint)
    return point


def quadext_option(text, hint='--theta'):
    try:
        return parse_quadext(text)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint=hint)


def matrix_option(text, hint='--matrix'):
    try:
        return parse_matrix(text)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint=hint)


arity_option = click.option(
    '-n', 'arity', type=click.IntRange(1, 3), required=True, help='Number of variables.'
)
