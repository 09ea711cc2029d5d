# modules/commands/__init__.py
import logging

import click

from utils.config_loader import ConfigLoader

logger = logging.getLogger(__name__)


def get_config(ctx):
    """The ConfigLoader stored by the root group, or a fresh one when a command runs standalone."""
    obj = ctx.find_root().obj
    if isinstance(obj, dict) and obj.get('config') is not None:
        return obj['config']
    logger.debug("No configuration on the context; loading the default config file")
    return ConfigLoader()


@click.group(name='term')
def term_group():
    """Evaluate, compare and plot MV-terms."""


@click.group(name='demo')
def demo_group():
    """Non-hopfian constructions with their exact certificates."""


@click.group(name='check')
def check_group():
    """Property suites and exhaustive checks."""


from . import term, census, diagram, separate, demo, check  # noqa: E402,F401

STANDALONE_COMMANDS = (census.census, diagram.fsb, diagram.quotient, separate.separate)
