# modules/chart_creator.py
import logging

import pandas as pd
import plotly.express as px
import plotly.graph_objects as go

logger = logging.getLogger(__name__)


def create_function_chart(f, title=None):
    """Line chart of a one-variable PL function through its breakpoints."""
    if f is None:
        return {"error": "No function available to chart."}
    if f.n != 1:
        return {"error": f"Only functions of one variable can be charted, got arity {f.n}."}

    try:
        breakpoints = [v[0] for v in f.domain.vertices()]
        df = pd.DataFrame({
            "x": [float(x) for x in breakpoints],
            "value": [float(f.eval_at((x,))) for x in breakpoints],
            "exact": [f"{x.numerator}/{x.denominator}" for x in breakpoints],
        })
    except Exception as e:
        return {"error": f"Error sampling the function for chart '{title}': {str(e)}"}

    try:
        fig = px.line(df, x="x", y="value", markers=True, hover_data=["exact"], title=title or "")
        fig.update_layout(
            height=420,
            margin=dict(l=70, r=40, t=50, b=60),
            template="plotly_white",
            xaxis_title="x",
            yaxis_title="f(x)",
        )
        fig.update_xaxes(range=[0, 1])
        fig.update_yaxes(range=[-0.05, 1.05] if f.kind == "mcn" else None)
        return {"data": fig.data, "layout": fig.layout}
    except Exception as e:
        logger.error(f"Chart '{title}': Error creating Plotly figure object: {e}", exc_info=True)
        return {"error": f"Error generating chart '{title}'. Details: {str(e)}"}


def create_bratteli_chart(diagram):
    """Vertices at (fraction, -depth), edges as segments, labels as text."""
    if diagram is None:
        return {"error": "No diagram available to chart."}

    try:
        positions = {
            (v.depth, v.index): (float(v.fraction), -v.depth)
            for row in diagram.rows
            for v in row
        }
        edge_x, edge_y = [], []
        for u, v in sorted(diagram.graph.edges):
            edge_x += [positions[u][0], positions[v][0], None]
            edge_y += [positions[u][1], positions[v][1], None]

        fig = go.Figure()
        fig.add_trace(go.Scatter(
            x=edge_x,
            y=edge_y,
            mode="lines",
            name="edges",
            line=dict(width=1, color="#95A5A6"),
            hoverinfo="skip",
        ))
        vertices = [v for row in diagram.rows for v in row]
        fig.add_trace(go.Scatter(
            x=[positions[(v.depth, v.index)][0] for v in vertices],
            y=[positions[(v.depth, v.index)][1] for v in vertices],
            mode="markers+text",
            name="vertices",
            text=[str(v.label) for v in vertices],
            hovertext=[str(v) for v in vertices],
            textposition="top center",
            marker=dict(size=8, color="#3498DB"),
        ))
        fig.update_layout(
            title=f"Farey-Stern-Brocot diagram to depth {diagram.depth}",
            title_x=0.5,
            showlegend=False,
            height=120 + 80 * (diagram.depth + 1),
            template="plotly_white",
            margin=dict(l=40, r=40, t=60, b=40),
        )
        fig.update_yaxes(showticklabels=False)
        logger.info(f"Bratteli chart created to depth {diagram.depth}")
        return {"data": fig.data, "layout": fig.layout}
    except Exception as e:
        logger.error(f"Error creating Bratteli chart: {e}", exc_info=True)
        return {"error": f"Error generating Bratteli chart: {str(e)}"}


def write_chart_html(chart, path):
    """Write a chart dictionary to a standalone HTML file."""
    if "error" in chart:
        raise ValueError(chart["error"])
    go.Figure(data=chart["data"], layout=chart["layout"]).write_html(path)
    logger.info(f"Chart written to {path}")
    return path
