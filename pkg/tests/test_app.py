"""Tests for the main application module."""

import logging
import os
from logging.handlers import RotatingFileHandler

import pytest
from unittest.mock import patch

from app import create_app


EXPECTED_COMMANDS = {'term', 'demo', 'check', 'census', 'fsb', 'quotient', 'separate'}


def test_create_app_registers_commands(cli):
    """Test that create_app registers every command group and standalone command."""
    assert cli.name == 'mvforge'
    assert set(cli.commands) == EXPECTED_COMMANDS


def test_create_app_subcommands(cli):
    """Test the subcommands of the term, demo and check groups."""
    assert set(cli.commands['term'].commands) == {'eval', 'eq', 'plot'}
    assert set(cli.commands['demo'].commands) == {'nonhopf-quadrant', 'nonhopf-eigen', 'chang-germ', 'shift'}
    assert set(cli.commands['check'].commands) == {
        'axioms', 'evaluation', 'hopfian', 'products', 'znk', 'chang', 'diagram', 'es',
    }


def test_help_lists_commands(cli, runner):
    """Test that --help lists the top-level commands."""
    result = runner.invoke(cli, ['--help'])

    assert result.exit_code == 0
    for name in EXPECTED_COMMANDS:
        assert name in result.stdout


def test_unknown_command(cli, runner):
    """Test that an unknown command is a usage error."""
    result = runner.invoke(cli, ['nonsense'])

    assert result.exit_code == 2


def test_config_reaches_commands(cli, runner, config_loader):
    """Test that commands read the configuration passed to create_app."""
    with patch('modules.commands.diagram.build_diagram', side_effect=RuntimeError("stop")) as mock_build:
        runner.invoke(cli, ['fsb'])

    mock_build.assert_called_once_with(2, max_depth=10)


def test_create_app_adds_rotating_log_file(cli, config_loader):
    """Test that logging writes to the configured rotating file."""
    handlers = [h for h in logging.getLogger().handlers if isinstance(h, RotatingFileHandler)]

    assert len(handlers) == 1
    assert handlers[0].baseFilename == config_loader.get_absolute_path('LOGGING', 'log_file')
    assert handlers[0].maxBytes == 5 * 1024 * 1024
    assert os.path.isdir(os.path.dirname(handlers[0].baseFilename))


def test_create_app_without_config(monkeypatch):
    """Test that create_app still builds the group when the configuration fails to load."""
    with patch('app.ConfigLoader', side_effect=OSError("unreadable")), \
         patch('app._configure_logging') as mock_logging:
        group = create_app()

    mock_logging.assert_called_once_with(None)
    assert set(group.commands) == EXPECTED_COMMANDS


@pytest.mark.parametrize("level", ["DEBUG", "WARNING"])
def test_log_level_from_config(config_loader, level):
    """Test that the root logger level follows [LOGGING] log_level."""
    config_loader.config.set('LOGGING', 'log_level', level)
    try:
        create_app(config_loader=config_loader)
        assert logging.getLogger().level == getattr(logging, level)
    finally:
        root_logger = logging.getLogger()
        for handler in [h for h in root_logger.handlers if isinstance(h, RotatingFileHandler)]:
            root_logger.removeHandler(handler)
            handler.close()


def test_package_docstrings_name_the_project():
    """Test that the top-level packages describe themselves as part of mvforge."""
    import modules
    import tests
    import utils

    for package in (modules, utils, tests):
        assert 'mvforge' in package.__doc__
