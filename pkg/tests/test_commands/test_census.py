"""Tests for the census command."""


def _rows(stdout):
    lines = [line.split() for line in stdout.strip().splitlines()]
    return lines[0], [[int(v) for v in line] for line in lines[1:]]


def test_census_interval(cli, runner):
    """Test the denominator census of [0,1]."""
    result = runner.invoke(cli, ['census', '-n', '1', '-b', '5'])

    assert result.exit_code == 0
    header, rows = _rows(result.stdout)
    assert header == ['b', 'N_b']
    assert rows == [[1, 2], [2, 1], [3, 2], [4, 2], [5, 4]]


def test_census_square(cli, runner):
    """Test that the square has 4 integer points and 5 points of denominator 2."""
    result = runner.invoke(cli, ['census', '-n', '2', '-b', '2'])

    assert result.exit_code == 0
    _, rows = _rows(result.stdout)
    assert rows == [[1, 4], [2, 5]]


def test_census_zmap_range(cli, runner):
    """Test the census of the diagonal, the range of x1 -> (x1, x1)."""
    result = runner.invoke(cli, ['census', '-n', '1', '-b', '2', '--zmap', 'x1', '--zmap', 'x1'])

    assert result.exit_code == 0
    header, rows = _rows(result.stdout)
    assert header == ['b', 'cube', 'range']
    assert rows == [[1, 4, 2], [2, 5, 1]]


def test_census_too_many_components(cli, runner):
    """Test that Z-maps into more than three dimensions are rejected."""
    args = ['census', '-n', '1', '-b', '2'] + ['--zmap', 'x1'] * 4
    result = runner.invoke(cli, args)

    assert result.exit_code == 2


def test_census_denominator_range(cli, runner):
    """Test that b must be at least 1."""
    result = runner.invoke(cli, ['census', '-n', '1', '-b', '0'])

    assert result.exit_code == 2
