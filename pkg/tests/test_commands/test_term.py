"""Tests for the term command group."""

import os

import pytest


def test_term_eval_exact_value(cli, runner):
    """Test that term eval prints the exact value of x1 (+) x1 at 1/3."""
    result = runner.invoke(cli, ['term', 'eval', '-n', '1', '-e', 'x1 (+) x1', '-p', '1/3'])

    assert result.exit_code == 0
    assert result.stdout.strip() == "2/3"


def test_term_eval_truncates_at_one(cli, runner):
    """Test that truncated addition saturates at 1."""
    result = runner.invoke(cli, ['term', 'eval', '-n', '1', '-e', 'x1 (+) x1', '-p', '3/4'])

    assert result.exit_code == 0
    assert result.stdout.strip() == "1/1"


def test_term_eval_two_variables_with_approx(cli, runner):
    """Test a two-variable term with the decimal approximation appended."""
    result = runner.invoke(cli, ['term', 'eval', '-n', '2', '-e', 'x1 (.) ~x2', '-p', '1/2,1/3', '--approx'])

    assert result.exit_code == 0
    exact, approx = result.stdout.strip().split('\t')
    assert exact == "1/6"
    assert approx == "0.166667"


@pytest.mark.parametrize("expression", ["x1 (+", "x2", "x1 ** x1"])
def test_term_eval_rejects_bad_terms(cli, runner, expression):
    """Test that unparsable terms and out-of-arity variables are usage errors."""
    result = runner.invoke(cli, ['term', 'eval', '-n', '1', '-e', expression, '-p', '1/2'])

    assert result.exit_code == 2


@pytest.mark.parametrize("point", ["3/2", "1/2,1/2", "abc"])
def test_term_eval_rejects_bad_points(cli, runner, point):
    """Test that points outside the cube or of the wrong length are usage errors."""
    result = runner.invoke(cli, ['term', 'eval', '-n', '1', '-e', 'x1', '-p', point])

    assert result.exit_code == 2


def test_term_eval_arity_range(cli, runner):
    """Test that the arity is limited to three variables."""
    result = runner.invoke(cli, ['term', 'eval', '-n', '4', '-e', 'x1', '-p', '0,0,0,0'])

    assert result.exit_code == 2


def test_term_eq_true_for_de_morgan(cli, runner):
    """Test that equivalent terms compare equal."""
    result = runner.invoke(cli, ['term', 'eq', '-n', '2', '-e1', 'x1 (.) x2', '-e2', '~(~x1 (+) ~x2)'])

    assert result.exit_code == 0
    assert result.stdout.strip() == "true"


def test_term_eq_false(cli, runner):
    """Test that different functions compare unequal."""
    result = runner.invoke(cli, ['term', 'eq', '-n', '1', '-e1', 'x1', '-e2', 'x1 (+) x1'])

    assert result.exit_code == 0
    assert result.stdout.strip() == "false"


def test_term_plot_writes_html(cli, runner, tmp_path):
    """Test that term plot writes an HTML file and prints its path."""
    output = os.path.join(tmp_path, 'plots', 'double.html')
    result = runner.invoke(cli, ['term', 'plot', '-e', 'x1 (+) x1', '-o', output])

    assert result.exit_code == 0
    assert result.stdout.strip() == output
    assert os.path.exists(output)
    with open(output, encoding='utf-8') as f:
        assert 'plotly' in f.read().lower()
