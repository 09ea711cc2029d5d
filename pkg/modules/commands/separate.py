# modules/commands/separate.py
import json
import logging

import click

from .options import arity_option, term_option
from modules.finitemv import separate as separate_function
from modules.mcnaughton import from_term
from utils.decorators import math_failures_exit
from utils.helpers import format_point

logger = logging.getLogger(__name__)


@click.command(name='separate')
@arity_option
@click.option('-e', 'expression', required=True, help='MV-term to separate from 0.')
@math_failures_exit
def separate(arity, expression):
    """Print a rational point r, d = den(r) and the image of the term in the chain with d + 1 elements."""
    term = term_option(expression, arity)
    result = separate_function(from_term(term, arity))
    logger.info(f"separate: {term} is nonzero at {format_point(result.point)} in a chain of {result.d + 1} elements")
    click.echo(json.dumps(result.to_json()))
