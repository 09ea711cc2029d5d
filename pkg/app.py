"""
mvforge - Main Application Entry Point
"""
import logging
import sys
from logging.handlers import RotatingFileHandler

import click
from dotenv import load_dotenv

# Import command groups
from modules.commands import STANDALONE_COMMANDS, check_group, demo_group, term_group

# Import configuration utilities
from utils.config_loader import ConfigLoader
from utils.helpers import ensure_directory_exists

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(lineno)d - %(message)s'


def _configure_logging(config_loader):
    """Console logging on stderr plus a rotating log file; stdout carries command output only."""
    level_name = 'INFO'
    log_file_path = 'mvforge.log'
    if config_loader:
        level_name = (config_loader.get('LOGGING', 'log_level', fallback='INFO') or 'INFO').upper()
        log_file_path = config_loader.get_absolute_path('LOGGING', 'log_file', 'mvforge.log')
    level = getattr(logging, level_name, logging.INFO)

    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    if not any(isinstance(h, RotatingFileHandler) for h in root_logger.handlers):
        try:
            ensure_directory_exists(log_file_path)
            # Rotate log file if it reaches 5MB, keep 5 backup files.
            rotating_file_handler = RotatingFileHandler(
                log_file_path, maxBytes=5*1024*1024, backupCount=5, encoding='utf-8'
            )
            rotating_file_handler.setLevel(logging.DEBUG)
            rotating_file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            root_logger.addHandler(rotating_file_handler)
        except OSError as e:
            root_logger.warning(f"Log file '{log_file_path}' not writable, logging to console only: {e}")


def create_app(config_loader=None):
    """Create and configure the root command group."""
    load_dotenv()

    config_error = None
    if config_loader is None:
        try:
            config_loader = ConfigLoader()
        except Exception as e:
            config_error = e

    _configure_logging(config_loader)
    logger = logging.getLogger(__name__)
    if config_error is not None:
        logger.error(f"CRITICAL: Failed to initialize ConfigLoader: {config_error}", exc_info=config_error)
    else:
        logger.info("ConfigLoader initialized using file: %s", getattr(config_loader, 'config_file_path', 'N/A'))

    @click.group(name='mvforge')
    @click.pass_context
    def cli(ctx):
        """Exact computations with MV-algebras, unital l-groups and their germs."""
        ctx.ensure_object(dict)
        ctx.obj['config'] = config_loader
        if ctx.invoked_subcommand:
            logger.info(f"Dispatching command '{ctx.invoked_subcommand}'")

    for group in (term_group, demo_group, check_group, *STANDALONE_COMMANDS):
        cli.add_command(group)
    logger.debug(f"Registered commands: {sorted(cli.commands)}")

    return cli


if __name__ == '__main__':
    try:
        mvforge_cli = create_app()
    except Exception as e:
        logging.getLogger(__name__).critical(f"Failed to create the command group: {e}", exc_info=True)
        sys.exit(1)
    mvforge_cli(obj={})
