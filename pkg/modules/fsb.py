# modules/fsb.py
"""The Farey-Stern-Brocot Bratteli diagram and the dimension groups of its
primitive quotients."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
from mpmath import iv

from modules.errors import (
    DepthBoundError,
    DimensionError,
    NotYetPresentError,
    RangeViolationError,
    RationalInputError,
    UndecidedOrderError,
)
from modules.exactnum import ContinuedFraction, QuadExt, convergents, farey_mediant, format_rational
from modules.finitemv import separate

logger = logging.getLogger(__name__)

MAX_DEPTH = 24


@dataclass(frozen=True)
class FareyVertex:
    depth: int
    index: int
    fraction: Fraction

    @property
    def label(self) -> int:
        return self.fraction.denominator

    def __str__(self) -> str:
        return f"{self.fraction.numerator}/{self.fraction.denominator} ({self.label})"


class BratteliDiagram:
    """Rows of Farey fractions; vertex (d, 2i) continues (d-1, i) and (d, 2i+1) is the mediant of (d-1, i) and (d-1, i+1)."""

    def __init__(self, graph: nx.DiGraph, depth: int) -> None:
        self.graph = graph
        self.depth = depth

    def __repr__(self) -> str:
        return f"BratteliDiagram(depth={self.depth}, vertices={self.graph.number_of_nodes()})"

    def row(self, depth: int) -> list:
        if not 0 <= depth <= self.depth:
            raise DimensionError(f"depth {depth} outside 0..{self.depth}")
        width = 2 if depth == 0 else 2 ** depth + 1
        return [self.graph.nodes[(depth, i)]["vertex"] for i in range(width)]

    @property
    def rows(self) -> list:
        return [self.row(d) for d in range(self.depth + 1)]

    def labels(self, depth: int) -> list:
        return [v.label for v in self.row(depth)]

    def fractions(self, depth: int) -> list:
        return [v.fraction for v in self.row(depth)]

    def relabel_from_edges(self) -> list:
        """Labels recomputed from the edge rule: 1 on row 0, else the sum over parents."""
        labels = {}
        for d in range(self.depth + 1):
            for v in self.row(d):
                node = (v.depth, v.index)
                parents = list(self.graph.predecessors(node))
                labels[node] = 1 if d == 0 else sum(labels[p] for p in parents)
        return [[labels[(d, v.index)] for v in self.row(d)] for d in range(self.depth + 1)]

    def cone(self, vertex: FareyVertex) -> set:
        """The vertex and everything reachable from it along downward edges."""
        node = (vertex.depth, vertex.index)
        return {node} | nx.descendants(self.graph, node)

    def _global_ids(self) -> dict:
        ids = {}
        for d in range(self.depth + 1):
            for v in self.row(d):
                ids[(d, v.index)] = len(ids)
        return ids

    def to_json(self) -> dict:
        ids = self._global_ids()
        return {
            "rows": [
                [{"p": v.fraction.numerator, "q": v.fraction.denominator, "label": v.label} for v in row]
                for row in self.rows
            ],
            "edges": sorted([ids[u], ids[v]] for u, v in self.graph.edges),
        }

    def to_dot(self) -> str:
        ids = self._global_ids()
        lines = ["digraph bratteli {", "  rankdir=TB;"]
        for d in range(self.depth + 1):
            members = " ".join(f"v{ids[(d, v.index)]};" for v in self.row(d))
            lines.append(f"  {{ rank=same; {members} }}")
            for v in self.row(d):
                lines.append(f'  v{ids[(d, v.index)]} [label="{v}"];')
        for u, v in sorted(self.graph.edges):
            lines.append(f"  v{ids[u]} -> v{ids[v]};")
        lines.append("}")
        return "\n".join(lines)


def build_diagram(depth: int, max_depth: int = MAX_DEPTH) -> BratteliDiagram:
    if depth < 0:
        raise DimensionError("depth must be nonnegative")
    if depth > max_depth:
        raise DepthBoundError(f"depth {depth} exceeds the cap {max_depth}")
    graph = nx.DiGraph()
    previous = [Fraction(0), Fraction(1)]
    for i, fraction in enumerate(previous):
        graph.add_node((0, i), vertex=FareyVertex(0, i, fraction))
    for d in range(1, depth + 1):
        row = []
        for i, fraction in enumerate(previous):
            row.append(fraction)
            graph.add_node((d, 2 * i), vertex=FareyVertex(d, 2 * i, fraction))
            graph.add_edge((d - 1, i), (d, 2 * i))
            if i + 1 < len(previous):
                mediant = farey_mediant(fraction, previous[i + 1])
                row.append(mediant)
                graph.add_node((d, 2 * i + 1), vertex=FareyVertex(d, 2 * i + 1, mediant))
                graph.add_edge((d - 1, i), (d, 2 * i + 1))
                graph.add_edge((d - 1, i + 1), (d, 2 * i + 1))
        previous = row
        logger.debug(f"Built row {d} with {len(row)} vertices")
    return BratteliDiagram(graph, depth)


def vertex_for_fraction(rho) -> FareyVertex:
    """The vertex where rho first appears, found by Stern-Brocot descent."""
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise RangeViolationError(f"{format_rational(rho)} lies outside [0,1]")
    lo, hi = Fraction(0), Fraction(1)
    if rho == lo:
        return FareyVertex(0, 0, rho)
    if rho == hi:
        return FareyVertex(0, 1, rho)
    index, depth = 0, 0
    while True:
        depth += 1
        mediant = farey_mediant(lo, hi)
        if rho == mediant:
            return FareyVertex(depth, 2 * index + 1, rho)
        if rho < mediant:
            hi, index = mediant, 2 * index
        else:
            lo, index = mediant, 2 * index + 1


@dataclass(frozen=True)
class DiagramIdeal:
    """Row ``depth`` split into the cone below rho's vertex and the rest, the ideal's shadow."""

    rho: Fraction
    depth: int
    cone: tuple
    ideal: tuple

    def to_json(self) -> dict:
        return {"rho": format_rational(self.rho), "depth": self.depth, "cone": list(self.cone), "ideal": list(self.ideal)}


def ideal_of_diagram_at(rho, depth: int, max_depth: int = MAX_DEPTH) -> DiagramIdeal:
    vertex = vertex_for_fraction(rho)
    if depth > max_depth:
        raise DepthBoundError(f"depth {depth} exceeds the cap {max_depth}")
    if depth < vertex.depth:
        raise NotYetPresentError(f"{format_rational(rho)} first appears at depth {vertex.depth}, not {depth}")
    diagram = build_diagram(depth, max_depth)
    reached = diagram.cone(vertex)
    width = len(diagram.row(depth))
    cone = tuple(i for i in range(width) if (depth, i) in reached)
    ideal = tuple(i for i in range(width) if (depth, i) not in reached)
    return DiagramIdeal(Fraction(rho), depth, cone, ideal)


# ---------------------------------------------------------------------------
# primitive quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteDim:
    """The q x q matrix quotient at a rational point with denominator q."""

    q: int

    def __str__(self) -> str:
        return f"FiniteDim({self.q})"


@dataclass(frozen=True)
class EffrosShen:
    theta: QuadExt

    def __str__(self) -> str:
        return f"EffrosShen({self.theta})"


@dataclass(frozen=True)
class BehnkeLeptin:
    """Lexicographic quotient; only its prime ideal count is recorded."""

    k: int
    q: int

    def __str__(self) -> str:
        return f"BehnkeLeptin({self.k}, {self.q})"


def primitive_quotient(rho):
    if isinstance(rho, QuadExt):
        if rho.is_rational:
            raise RationalInputError(f"{rho} is rational; pass it as a fraction")
        if not 0 < rho < 1:
            raise RangeViolationError(f"{rho} lies outside [0,1]")
        return EffrosShen(rho)
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise RangeViolationError(f"{format_rational(rho)} lies outside [0,1]")
    return FiniteDim(rho.denominator)


def prime_ideal_count(descriptor) -> int:
    if isinstance(descriptor, (FiniteDim, EffrosShen)):
        return 1
    if isinstance(descriptor, BehnkeLeptin):
        return 2
    raise TypeError(f"not a primitive quotient: {descriptor!r}")


def theta_from_preset(name: str) -> QuadExt:
    presets = {"golden": QuadExt.golden()}
    try:
        return presets[name]
    except KeyError:
        raise ValueError(f"unknown theta preset {name!r}; known: {sorted(presets)}") from None


class EffrosShenGroup:
    """Z + Z*theta with unit 1, totally ordered as a subgroup of the reals.

    theta is either an exact QuadExt or a continued-fraction prefix; with a
    prefix, signs are decided by bracketing convergents and may stay undecided.
    """

    def __init__(self, theta, terms: int | None = None) -> None:
        if isinstance(theta, QuadExt):
            if theta.is_rational:
                raise RationalInputError("an Effros-Shen group needs an irrational theta")
            self.theta = theta
            self.bracket = None
        elif isinstance(theta, ContinuedFraction):
            count = terms or (len(theta.quotients) + 2 * len(theta.period))
            if count < 2:
                raise ValueError("at least two partial quotients are needed to bracket theta")
            approximations = convergents(theta, count)
            self.theta = None
            self.bracket = tuple(sorted(approximations[-2:]))
        else:
            raise TypeError(f"theta must be a QuadExt or a ContinuedFraction, not {type(theta).__name__}")

    unit = (1, 0)
    zero = (0, 0)

    def sign(self, element):
        """Sign of a + b*theta; None when a bracket cannot decide it."""
        a, b = (int(v) for v in element)
        if self.theta is not None:
            return (a + b * self.theta).sign()
        if b == 0:
            return (a > 0) - (a < 0)
        lo, hi = self.bracket
        low_value, high_value = sorted((a + b * lo, a + b * hi))
        if low_value > 0:
            return 1
        if high_value < 0:
            return -1
        logger.warning(f"Sign of ({a}, {b}) undecided with bracket {lo}..{hi}")
        return None

    def add(self, x, y) -> tuple:
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x, y) -> tuple:
        return (x[0] - y[0], x[1] - y[1])

    def neg(self, x) -> tuple:
        return (-x[0], -x[1])

    def compare(self, x, y) -> int:
        result = self.sign(self.sub(x, y))
        if result is None:
            raise UndecidedOrderError(f"cannot order {x} and {y} at this precision")
        return result

    def le(self, x, y) -> bool:
        return self.compare(x, y) <= 0

    def join(self, x, y) -> tuple:
        return tuple(x) if self.compare(x, y) >= 0 else tuple(y)

    def meet(self, x, y) -> tuple:
        return tuple(x) if self.compare(x, y) <= 0 else tuple(y)

    def interval_sign(self, element, digits: int = 50):
        """Sign from an mpmath interval enclosure of a + b*theta; None if the enclosure straddles 0."""
        if self.theta is None:
            raise RationalInputError("interval signs need an exact theta")
        a, b = (int(v) for v in element)
        saved = iv.dps
        iv.dps = digits
        try:
            value = iv.mpf(a) + iv.mpf(b) * self.theta.to_interval(digits)
        finally:
            iv.dps = saved
        if value.a > 0:
            return 1
        if value.b < 0:
            return -1
        if a == 0 and b == 0:
            return 0
        return None


def es_sign(group: EffrosShenGroup, element):
    return group.sign(element)


def es_positive(group: EffrosShenGroup, element) -> bool:
    """Strictly positive; an undecided sign raises."""
    result = group.sign(element)
    if result is None:
        raise UndecidedOrderError(f"cannot decide the sign of {tuple(element)}")
    return result > 0


def residual_fd_witness(f) -> tuple:
    """A rational point where f does not vanish, with the matrix size of the quotient there."""
    if f.n != 1:
        raise DimensionError("finite-dimensional witnesses are computed on [0,1]")
    separation = separate(f)
    return separation.point[0], separation.d


def _stern_brocot_rows(depth: int) -> list:
    """Independent oracle: rows of the mediant tree built by list insertion."""
    row = [(0, 1), (1, 1)]
    rows = [list(row)]
    for _ in range(depth):
        grown = []
        for (p, q), (r, s) in zip(row, row[1:]):
            grown += [(p, q), (p + r, q + s)]
        row = grown + [row[-1]]
        rows.append(list(row))
    return rows


def diagram_report(depth: int, max_depth: int = MAX_DEPTH) -> dict:
    """Row sizes, labels, the edge rule and adjacent unimodularity, checked against a mediant-tree oracle."""
    diagram = build_diagram(depth, max_depth)
    oracle = _stern_brocot_rows(depth)
    fractions = [[(f.numerator, f.denominator) for f in diagram.fractions(d)] for d in range(depth + 1)]
    labels = [diagram.labels(d) for d in range(depth + 1)]
    report = {
        "depth": depth,
        "matches_oracle": fractions == oracle,
        "row_sizes": all(len(row) == (2 if d == 0 else 2 ** d + 1) for d, row in enumerate(fractions)),
        "labels_are_denominators": all(
            label == q for row_l, row_f in zip(labels, fractions) for label, (_, q) in zip(row_l, row_f)
        ),
        "edge_rule": diagram.relabel_from_edges() == labels,
        "unimodular": all(
            abs(p * s - r * q) == 1 for row in fractions for (p, q), (r, s) in zip(row, row[1:])
        ),
    }
    report["passes"] = all(v for k, v in report.items() if isinstance(v, bool))
    logger.info(f"Diagram check to depth {depth} passes: {report['passes']}")
    return report


def es_agreement_report(theta: QuadExt, samples: int = 1000, bound: int = 100, digits: int = 50, seed: int = 0) -> dict:
    """Exact positivity against an interval enclosure on random (a, b) with |a|, |b| <= bound."""
    rng = random.Random(seed)
    group = EffrosShenGroup(theta)
    disagreements, undecided = [], 0
    for _ in range(samples):
        element = (rng.randint(-bound, bound), rng.randint(-bound, bound))
        exact = group.sign(element)
        approximate = group.interval_sign(element, digits)
        if exact is None or approximate is None:
            undecided += 1
        elif exact != approximate:
            disagreements.append(list(element))
    report = {
        "theta": str(theta),
        "samples": samples,
        "digits": digits,
        "undecided": undecided,
        "disagreements": disagreements,
    }
    report["passes"] = not disagreements and undecided == 0
    logger.info(f"Effros-Shen interval agreement over {samples} samples passes: {report['passes']}")
    return report
