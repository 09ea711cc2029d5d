"""Test fixtures and configuration for mvforge tests."""

import pytest
import logging
import os
import tempfile
from fractions import Fraction
from logging.handlers import RotatingFileHandler

from click.testing import CliRunner


def _short_name(nodeid):
    """tests/test_modules/test_fsb.py::test_x -> test_modules/test_fsb::test_x"""
    path, _, name = nodeid.partition("::")
    return f"{path.replace('tests/', '', 1).replace('.py', '')}::{name}"


class SummaryReporter:
    """Short end-of-run summary grouped by test directory."""

    def __init__(self, config):
        self.config = config
        self.outcomes = {'passed': [], 'failed': [], 'errors': []}
        self.slow = set()
        self.reasons = {}

    @pytest.hookimpl(hookwrapper=True)
    def pytest_runtest_makereport(self, item, call):
        outcome = yield
        report = outcome.get_result()
        if item.get_closest_marker('slow'):
            self.slow.add(item.nodeid)

        if report.when == 'call':
            if report.passed:
                self.outcomes['passed'].append(item.nodeid)
            elif report.failed:
                self.outcomes['failed'].append(item.nodeid)
                self.reasons[item.nodeid] = str(report.longrepr).splitlines()[-1] if report.longrepr else "no message"
        elif report.failed:
            # setup or teardown
            self.outcomes['errors'].append(item.nodeid)

    def pytest_terminal_summary(self, terminalreporter, exitstatus, config):
        separator = "=" * 80
        write = terminalreporter.write_line
        passed, failed, errors = (self.outcomes[k] for k in ('passed', 'failed', 'errors'))

        write("")
        write(separator)
        write("MVFORGE TEST SUMMARY".center(80))
        write(separator)

        by_directory = {}
        for nodeid in passed + failed:
            parts = nodeid.split("::")[0].split("/")
            directory = parts[1] if len(parts) > 2 else "tests"
            by_directory.setdefault(directory, [0, 0])
            by_directory[directory][0 if nodeid in passed else 1] += 1
        for directory, (ok, bad) in sorted(by_directory.items()):
            write(f"  {directory:<20} {ok:>5} passed {bad:>5} failed")

        slow_run = len(self.slow & set(passed + failed))
        write(f"\nPASSED: {len(passed)}   (slow: {slow_run} run)")
        if failed:
            write(f"FAILED: {len(failed)}")
            for i, nodeid in enumerate(failed, 1):
                write(f"  {i}. {_short_name(nodeid)}")
                write(f"     Reason: {self.reasons.get(nodeid, 'unknown')}")
        if errors:
            write(f"ERRORS: {len(errors)}")
            for i, nodeid in enumerate(errors, 1):
                write(f"  {i}. {_short_name(nodeid)}")

        write(separator)
        if failed or errors:
            total = len(passed) + len(failed) + len(errors)
            write(f"Results: {len(passed)}/{total} passed, {len(failed)} failed, {len(errors)} errors".center(80))
        else:
            write(f"All {len(passed)} tests passed".center(80))
        write(separator)


def pytest_configure(config):
    config.pluginmanager.register(SummaryReporter(config), 'summary_reporter')


@pytest.fixture
def mock_config_dir():
    """Create a temporary directory for configuration files."""
    with tempfile.TemporaryDirectory() as tmpdirname:
        os.makedirs(os.path.join(tmpdirname, 'config'), exist_ok=True)
        yield tmpdirname


@pytest.fixture
def mock_config_file(mock_config_dir):
    """Create a mock configuration file with small limits."""
    config_file = os.path.join(mock_config_dir, 'config', 'config.ini')
    log_file = os.path.join(mock_config_dir, 'logs', 'mvforge-test.log')
    with open(config_file, 'w') as f:
        f.write(f"""[LIMITS]
max_depth = 10
max_finite_algebra_size = 64
max_ambient_dimension = 3
max_snf_size = 4

[LOGGING]
log_file = {log_file}
log_level = DEBUG

[CHECKS]
default_trials = 10
default_seed = 7
chang_window = 3
effros_shen_digits = 50

[FSB]
default_depth = 2
""")
    return config_file


@pytest.fixture
def config_loader(mock_config_file, monkeypatch):
    """A ConfigLoader reading the mock configuration, without environment overrides."""
    from utils.config_loader import ConfigLoader
    monkeypatch.delenv('MVFORGE_MAX_DEPTH', raising=False)
    monkeypatch.delenv('MVFORGE_LOG_LEVEL', raising=False)
    return ConfigLoader(config_path=mock_config_file)


@pytest.fixture
def cli(config_loader):
    """The root command group built by create_app on the mock configuration."""
    from app import create_app
    group = create_app(config_loader=config_loader)
    yield group
    root_logger = logging.getLogger()
    for handler in [h for h in root_logger.handlers if isinstance(h, RotatingFileHandler)]:
        root_logger.removeHandler(handler)
        handler.close()


@pytest.fixture
def runner():
    """A click test runner."""
    return CliRunner()


@pytest.fixture
def golden():
    """theta = (sqrt(5) - 1)/2."""
    from modules.exactnum import QuadExt
    return QuadExt(Fraction(-1, 2), Fraction(1, 2), 5)
