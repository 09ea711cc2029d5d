# modules/commands/diagram.py
import json
import logging

import click

from . import get_config
from .options import quadext_option
from modules.chart_creator import create_bratteli_chart, write_chart_html
from modules.exactnum import QuadExt, parse_rational
from modules.errors import RationalInputError
from modules.fsb import build_diagram, prime_ideal_count, primitive_quotient, vertex_for_fraction
from utils.decorators import math_failures_exit
from utils.helpers import ensure_directory_exists

logger = logging.getLogger(__name__)


@click.command(name='fsb')
@click.option('--depth', type=click.IntRange(min=0), default=None, help='Depth of the diagram (config [FSB] default_depth).')
@click.option('--dot', 'as_dot', is_flag=True, help='Emit Graphviz DOT.')
@click.option('--json', 'as_json', is_flag=True, help='Emit rows and edges as JSON.')
@click.option('--html', 'html', type=click.Path(dir_okay=False), default=None, help='Write a plotly figure to this file.')
@click.pass_context
@math_failures_exit
def fsb(ctx, depth, as_dot, as_json, html):
    """Build the Farey-Stern-Brocot Bratteli diagram."""
    if as_dot and as_json:
        raise click.UsageError("--dot and --json are mutually exclusive")
    config = get_config(ctx)
    if depth is None:
        depth = config.getint('FSB', 'default_depth')
    diagram = build_diagram(depth, max_depth=config.max_depth)
    logger.info(f"fsb: built {diagram!r}")

    if html:
        ensure_directory_exists(html)
        write_chart_html(create_bratteli_chart(diagram), html)
    if as_dot:
        click.echo(diagram.to_dot())
    elif as_json:
        click.echo(json.dumps(diagram.to_json()))
    elif not html:
        for d in range(depth + 1):
            click.echo(f"{d}: " + " ".join(str(label) for label in diagram.labels(d)))


@click.command(name='quotient')
@click.option('--rho', default=None, help='Rational point p/q in [0,1].')
@click.option('--theta', default=None, help='Irrational point: "golden" or "a+b*sqrt(D)".')
@math_failures_exit
def quotient(rho, theta):
    """Describe the primitive quotient at a point of [0,1]."""
    if (rho is None) == (theta is None):
        raise click.UsageError("give exactly one of --rho and --theta")
    if rho is not None:
        try:
            point = parse_rational(rho)
        except RationalInputError as e:
            raise click.BadParameter(str(e), param_hint='--rho')
        descriptor = primitive_quotient(point)
        vertex = vertex_for_fraction(point)
        click.echo(str(descriptor))
        click.echo(f"first depth: {vertex.depth}")
    else:
        value = quadext_option(theta)
        if not isinstance(value, QuadExt):
            raise RationalInputError(f"{theta} is rational; use --rho")
        descriptor = primitive_quotient(value)
        click.echo(str(descriptor))
    click.echo(f"prime ideals: {prime_ideal_count(descriptor)}")
    logger.info(f"quotient: {descriptor}")
