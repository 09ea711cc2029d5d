# modules/commands/census.py
import logging

import click
import pandas as pd

from . import get_config
from .options import arity_option, term_option
from modules.mcnaughton import ZMapFn, denominator_census, from_term, range_of_zmap
from modules.plgeom import MAX_AMBIENT_DIMENSION, triangulate_cube
from utils.decorators import math_failures_exit

logger = logging.getLogger(__name__)


def census_table(arity, max_b, components=()):
    """N_b of the cube [0,1]^m, and of the range of the Z-map when components are given."""
    if components:
        zmap = ZMapFn(from_term(t, arity) for t in components)
        target = triangulate_cube(zmap.m)
        image = range_of_zmap(zmap)
        rows = [
            {"b": b, "cube": denominator_census(target, b), "range": denominator_census(image, b)}
            for b in range(1, max_b + 1)
        ]
    else:
        cube = triangulate_cube(arity)
        rows = [{"b": b, "N_b": denominator_census(cube, b)} for b in range(1, max_b + 1)]
    return pd.DataFrame(rows)


@click.command(name='census')
@arity_option
@click.option('-b', 'max_b', type=click.IntRange(1, 64), required=True, help='Largest denominator.')
@click.option('--zmap', 'zmap', multiple=True, help='Component term of a Z-map; repeat once per component.')
@click.pass_context
@math_failures_exit
def census(ctx, arity, max_b, zmap):
    """Count points with each denominator b on the cube or on a Z-map's range."""
    limit = min(MAX_AMBIENT_DIMENSION, get_config(ctx).getint('LIMITS', 'max_ambient_dimension'))
    if len(zmap) > limit:
        raise click.BadParameter(f"at most {limit} components", param_hint='--zmap')
    components = [term_option(t, arity, hint='--zmap') for t in zmap]
    logger.info(f"census: n={arity}, b<={max_b}, {len(components)} Z-map components")
    table = census_table(arity, max_b, components)
    click.echo(table.to_string(index=False))
