# modules/commands/term.py
import logging

import click

from . import term_group
from .options import arity_option, point_option, term_option
from modules.chart_creator import create_function_chart, write_chart_html
from modules.exactnum import format_rational
from modules.mcnaughton import equal, from_term
from utils.decorators import math_failures_exit
from utils.helpers import ensure_directory_exists, format_approx

logger = logging.getLogger(__name__)


@term_group.command(name='eval')
@arity_option
@click.option('-e', 'expression', required=True, help='MV-term, e.g. "x1 (+) ~x2".')
@click.option('-p', 'point', required=True, help='Rational point, e.g. "1/2,1/3".')
@click.option('--approx', is_flag=True, help='Append a decimal approximation.')
@math_failures_exit
def term_eval(arity, expression, point, approx):
    """Print the exact value of a term at a rational point."""
    term = term_option(expression, arity)
    r = point_option(point, arity)
    logger.info(f"term eval: {term} at {r}")
    value = from_term(term, arity).eval_at(r)
    line = format_rational(value)
    if approx:
        line += f"\t{format_approx(value)}"
    click.echo(line)


@term_group.command(name='eq')
@arity_option
@click.option('-e1', '--e1', 'first', required=True, help='First MV-term.')
@click.option('-e2', '--e2', 'second', required=True, help='Second MV-term.')
@math_failures_exit
def term_eq(arity, first, second):
    """Print whether two terms denote the same McNaughton function."""
    s = term_option(first, arity, hint='-e1')
    t = term_option(second, arity, hint='-e2')
    same = equal(from_term(s, arity), from_term(t, arity))
    logger.info(f"term eq: {s} == {t}: {same}")
    click.echo('true' if same else 'false')


@term_group.command(name='plot')
@click.option('-e', 'expression', required=True, help='MV-term in x1.')
@click.option('-o', 'output', required=True, type=click.Path(dir_okay=False), help='HTML file to write.')
@math_failures_exit
def term_plot(expression, output):
    """Write an HTML plot of a one-variable term."""
    term = term_option(expression, 1)
    chart = create_function_chart(from_term(term, 1), title=str(term))
    if "error" in chart:
        logger.error(f"term plot: {chart['error']}")
        click.echo(f"Error: {chart['error']}", err=True)
        raise SystemExit(1)
    ensure_directory_exists(output)
    write_chart_html(chart, output)
    click.echo(output)
