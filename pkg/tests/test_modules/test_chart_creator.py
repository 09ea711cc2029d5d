"""Tests for the chart creator module."""

from unittest.mock import MagicMock, patch

import pytest

from modules.chart_creator import create_bratteli_chart, create_function_chart, write_chart_html
from modules.fsb import build_diagram
from modules.mcnaughton import LGroupFunction, McNFunction, from_term
from modules.plgeom import AffineFunctional
from modules.terms import parse_term


@pytest.fixture
def double():
    return from_term(parse_term("x1 (+) x1", 1), 1)


def test_create_function_chart(double):
    """Test charting a function of one variable."""
    result = create_function_chart(double, title="x1 (+) x1")

    assert "data" in result
    assert "layout" in result
    trace = result["data"][0]
    assert list(trace.x) == [0.0, 0.5, 1.0]
    assert list(trace.y) == [0.0, 1.0, 1.0]
    assert result["layout"].title.text == "x1 (+) x1"


def test_create_function_chart_lgroup():
    """Test that l-group functions are charted without the unit range."""
    two_x = LGroupFunction.from_functional(1, AffineFunctional((2,), 0))
    result = create_function_chart(two_x)
    assert list(result["data"][0].y) == [0.0, 2.0]


def test_create_function_chart_none():
    """Test chart creation without a function."""
    result = create_function_chart(None)
    assert "error" in result
    assert "no function" in result["error"].lower()


def test_create_function_chart_wrong_arity():
    """Test chart creation for a function of two variables."""
    result = create_function_chart(McNFunction.coordinate(2, 1))
    assert "error" in result
    assert "arity 2" in result["error"]


@patch('plotly.express.line')
def test_create_function_chart_plotly_failure(mock_line, double):
    """Test that Plotly errors are reported, not raised."""
    mock_line.side_effect = RuntimeError("renderer unavailable")
    result = create_function_chart(double, title="broken")
    assert "error" in result
    assert "renderer unavailable" in result["error"]


def test_create_bratteli_chart():
    """Test charting the diagram."""
    result = create_bratteli_chart(build_diagram(2))

    assert "data" in result
    edges, vertices = result["data"]
    assert list(vertices.text) == ["1", "1", "1", "2", "1", "1", "3", "2", "3", "1"]
    assert len(edges.x) == 3 * 11
    assert "depth 2" in result["layout"].title.text


def test_create_bratteli_chart_none():
    """Test chart creation without a diagram."""
    result = create_bratteli_chart(None)
    assert "error" in result


def test_write_chart_html(tmp_path, double):
    """Test writing a chart to an HTML file."""
    path = tmp_path / "chart.html"
    assert write_chart_html(create_function_chart(double), str(path)) == str(path)
    assert path.exists()
    assert "plotly" in path.read_text(encoding="utf-8").lower()


def test_write_chart_html_error(tmp_path):
    """Test that an error chart is not written."""
    with pytest.raises(ValueError):
        write_chart_html({"error": "nothing to draw"}, str(tmp_path / "chart.html"))


def test_write_chart_html_uses_figure(tmp_path):
    """Test that the figure is rebuilt from data and layout."""
    with patch('modules.chart_creator.go.Figure') as mock_figure:
        mock_figure.return_value = MagicMock()
        write_chart_html({"data": [], "layout": {}}, str(tmp_path / "x.html"))
        mock_figure.assert_called_once_with(data=[], layout={})
        mock_figure.return_value.write_html.assert_called_once()
