"""Tests for the demo command group."""

import json

from unittest.mock import patch


def test_demo_quadrant(cli, runner):
    """Test the shear demo: surjective but not injective."""
    result = runner.invoke(cli, ['demo', 'nonhopf-quadrant'])

    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "σ(x) = x"
    assert lines[2] == "σ((x−y)∨0) = 0"
    assert lines[-1] == "surjective: true, injective: false"


def test_demo_eigen(cli, runner):
    """Test the eigen-segment certificate."""
    result = runner.invoke(cli, ['demo', 'nonhopf-eigen'])

    assert result.exit_code == 0
    certificate = json.loads(result.stdout)
    assert certificate["passes"] is True
    assert certificate["negative_control"]["passes"] is False


def test_demo_chang_germ_uses_config_window(cli, runner):
    """Test that the window defaults to [CHECKS] chang_window."""
    with patch('modules.commands.demo.chang_iso_check', return_value={"passes": True}) as mock_check:
        result = runner.invoke(cli, ['demo', 'chang-germ'])

    assert result.exit_code == 0
    mock_check.assert_called_once_with(3)


def test_demo_chang_germ(cli, runner):
    """Test the Chang algebra check on a small window."""
    result = runner.invoke(cli, ['demo', 'chang-germ', '--window', '2'])

    assert result.exit_code == 0
    assert json.loads(result.stdout)["passes"] is True


def test_demo_shift(cli, runner):
    """Test the shift kernel demo."""
    result = runner.invoke(cli, ['demo', 'shift'])

    assert result.exit_code == 0
    certificate = json.loads(result.stdout)
    assert certificate["term_is_zero"] is False
    assert certificate["substituted_is_zero"] is True


def test_demo_failed_certificate_exits_1(cli, runner):
    """Test that a failing certificate gives exit status 1."""
    with patch('modules.commands.demo.shift_kernel_demo', return_value={"passes": False}):
        result = runner.invoke(cli, ['demo', 'shift'])

    assert result.exit_code == 1
    assert json.loads(result.stdout) == {"passes": False}
