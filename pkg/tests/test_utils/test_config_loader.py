"""Tests for the config loader utility."""

import os
import tempfile

import pytest

from utils.config_loader import ConfigLoader


def test_config_loader_init_with_existing_file(mock_config_file):
    """Test initialization with an existing config file."""
    config_loader = ConfigLoader(config_path=mock_config_file)
    assert config_loader.config.sections() == ['LIMITS', 'LOGGING', 'CHECKS', 'FSB']
    assert config_loader.get('FSB', 'default_depth') == '2'
    assert config_loader.get('LOGGING', 'log_level') == 'DEBUG'


def test_config_loader_init_without_file(monkeypatch):
    """Test initialization without an existing config file."""
    monkeypatch.delenv('MVFORGE_MAX_DEPTH', raising=False)
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = os.path.join(tmpdir, 'config', 'nonexistent.ini')
        config_loader = ConfigLoader(config_path=config_path)

        # Check if the default config was created
        assert os.path.exists(config_path)
        assert config_loader.config.sections() == ['LIMITS', 'LOGGING', 'CHECKS', 'FSB']
        assert config_loader.max_depth == 24
        assert config_loader.getint('CHECKS', 'default_trials') == 200


def test_config_loader_get_with_fallback(mock_config_file):
    """Test getting a value with a fallback."""
    config_loader = ConfigLoader(config_path=mock_config_file)
    assert config_loader.get('NONEXISTENT', 'key', fallback='fallback_value') == 'fallback_value'
    assert config_loader.get('LIMITS', 'nonexistent_key', fallback='fallback_value') == 'fallback_value'
    assert config_loader.get('NONEXISTENT', 'key') is None


def test_getint_falls_back_on_malformed_values(mock_config_dir):
    """Test that a non-integer entry yields the module default."""
    path = os.path.join(mock_config_dir, 'config', 'bad.ini')
    with open(path, 'w') as f:
        f.write("[CHECKS]\ndefault_trials = many\n")
    config_loader = ConfigLoader(config_path=path)
    assert config_loader.getint('CHECKS', 'default_trials') == 200
    assert config_loader.getint('CHECKS', 'chang_window') == 10


def test_max_depth_environment_override(config_loader, monkeypatch):
    """Test that MVFORGE_MAX_DEPTH wins over the file."""
    assert config_loader.max_depth == 10
    monkeypatch.setenv('MVFORGE_MAX_DEPTH', '5')
    assert config_loader.max_depth == 5


def test_log_level_environment_override(config_loader, monkeypatch):
    """Test that MVFORGE_LOG_LEVEL wins over the file."""
    monkeypatch.setenv('MVFORGE_LOG_LEVEL', 'WARNING')
    assert config_loader.get('LOGGING', 'log_level') == 'WARNING'


def test_get_absolute_path(config_loader):
    """Test resolving relative and absolute paths."""
    assert os.path.isabs(config_loader.get_absolute_path('LOGGING', 'log_file'))
    relative = config_loader.get_absolute_path('PATHS', 'charts', 'charts')
    assert relative == os.path.join(ConfigLoader.PROJECT_ROOT, 'charts')
    assert config_loader.get_absolute_path('PATHS', 'missing') is None
