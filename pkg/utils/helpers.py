"""Helper utility functions for mvforge: parsing and formatting exact values."""

import os
import re
from fractions import Fraction

from modules.exactnum import QuadExt, format_rational, parse_rational
from modules.fsb import theta_from_preset

_QUAD_PATTERN = re.compile(
    r"^\s*(?P<a>[-+]?\d+(?:/\d+)?)?\s*(?P<sign>[-+])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt\((?P<d>\d+)\)\s*$"
)


def parse_point(text):
    """Parse a comma-separated rational point.

    Args:
        text: Coordinates such as "1/2,1/3" or "0, 1"

    Returns:
        Tuple of Fractions
    """
    parts = [p for p in str(text).split(',')]
    if not parts or any(not p.strip() for p in parts):
        raise ValueError(f"not a point: {text!r}")
    return tuple(parse_rational(p) for p in parts)


def format_point(point):
    """Format a rational point as "(p/q, ...)"."""
    return "(" + ", ".join(format_rational(c) for c in point) + ")"


def parse_quadext(text):
    """Parse a real quadratic number.

    Args:
        text: A preset name ("golden"), a rational "p/q", or "a+b*sqrt(D)"
              where a and b are rationals and either may be omitted

    Returns:
        QuadExt (or Fraction when no square root appears)
    """
    text = str(text).strip()
    try:
        return theta_from_preset(text)
    except ValueError:
        pass
    if 'sqrt' not in text:
        return parse_rational(text)
    match = _QUAD_PATTERN.match(text)
    if not match:
        raise ValueError(f"not of the form a+b*sqrt(D): {text!r}")
    a = Fraction(match.group('a')) if match.group('a') else Fraction(0)
    b = Fraction(match.group('b')) if match.group('b') else Fraction(1)
    if match.group('sign') == '-':
        b = -b
    elif match.group('sign') is None and match.group('a'):
        raise ValueError(f"missing sign between the rational and irrational parts: {text!r}")
    return QuadExt(a, b, int(match.group('d')))


def parse_matrix(text):
    """Parse an integer matrix written as rows separated by ';' and entries by ','.

    Args:
        text: For example "2,1;1,1"

    Returns:
        Tuple of integer tuples
    """
    rows = [r for r in str(text).split(';') if r.strip()]
    if not rows:
        raise ValueError(f"not a matrix: {text!r}")
    matrix = tuple(tuple(int(v) for v in row.split(',')) for row in rows)
    if len({len(row) for row in matrix}) != 1:
        raise ValueError(f"rows of different lengths in {text!r}")
    return matrix


def parse_int_list(text):
    """Parse "2,3" into (2, 3)."""
    return tuple(int(v) for v in str(text).split(',') if v.strip())


def format_approx(value, digits=6):
    """A decimal approximation for display next to an exact value."""
    if value is None:
        return "N/A"
    try:
        return f"{float(value):.{digits}f}"
    except (ValueError, TypeError):
        return str(value)


def ensure_directory_exists(path):
    """Ensure that a directory exists.

    Args:
        path: Path to a directory or file. If a file path is provided,
              the directory containing the file will be created.
    """
    if os.path.splitext(path)[1]:
        directory = os.path.dirname(path)
    else:
        directory = path

    if directory and not os.path.exists(directory):
        os.makedirs(directory, exist_ok=True)
