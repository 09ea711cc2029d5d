# modules/eigenhopf.py
"""A non-hopfian McNaughton algebra on an eigen-segment over Q(sqrt(5)).

The unimodular matrix L = [[1,-1],[-1,2]] has the eigenvalue (3 - sqrt(5))/2
with eigenvector w = (1/2, (sqrt(5)-1)/4). On the segment E = {t*w} the map
f -> f o L acts as the substitution t -> lambda*t, which is onto but kills
every function vanishing on lambda*E.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy import Matrix

from modules.errors import (
    DegenerateSegmentError,
    DimensionError,
    NotUnimodularError,
    RangeViolationError,
)
from modules.exactnum import QuadExt, as_point, den, format_rational, simplest_between
from modules.finitemv import QuadSegment, is_residually_finite
from modules.mcnaughton import LGroupFunction, McNFunction, hat_function, join, meet, unit_interval_part
from modules.plgeom import AffineFunctional, affine_dimension

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnimodularMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DimensionError("a unimodular matrix must be square")
        det = Matrix(rows).det()
        if abs(det) != 1:
            raise NotUnimodularError(f"determinant {det} is not +1 or -1")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def det(self) -> int:
        return int(Matrix(self.rows).det())

    def inverse(self) -> UnimodularMatrix:
        inverse = Matrix(self.rows).inv()
        return UnimodularMatrix(tuple(tuple(int(inverse[i, j]) for j in range(self.k)) for i in range(self.k)))

    def apply(self, vector) -> tuple:
        if len(vector) != self.k:
            raise DimensionError(f"vector of length {len(vector)} for a {self.k}x{self.k} matrix")
        return tuple(sum((a * x for a, x in zip(row, vector)), 0 * vector[0]) for row in self.rows)


@dataclass(frozen=True)
class EigenSegment:
    """The segment {t*w : 0 <= t <= 1}, with w in [0,1/2]^n and coordinates in Q(sqrt(d))."""

    w: tuple
    d: int = 5

    def __post_init__(self):
        w = tuple(c if isinstance(c, QuadExt) else QuadExt(c, 0, self.d) for c in self.w)
        if not w:
            raise DimensionError("the endpoint needs at least one coordinate")
        if all(c == 0 for c in w):
            raise DegenerateSegmentError("the segment direction is zero")
        half = Fraction(1, 2)
        if any(c < 0 or c > half for c in w):
            raise RangeViolationError("the endpoint must lie in [0,1/2]^n")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.w)

    def point(self, t) -> tuple:
        return tuple(t * c for c in self.w)

    def descriptor(self) -> QuadSegment:
        return QuadSegment(tuple(QuadExt(0, 0, self.d) for _ in self.w), self.w)

    def to_json(self) -> list:
        return [str(c) for c in self.w]


def _quad(x, d: int) -> QuadExt:
    return x if isinstance(x, QuadExt) else QuadExt(x, 0, d)


class SegmentFunction:
    """PL function of t in [0,1] with breakpoints and coefficients in Q(sqrt(d)).

    Piece i is t -> slope*t + intercept on [breakpoints[i], breakpoints[i+1]].
    """

    def __init__(self, breakpoints, pieces, d: int = 5, source=None) -> None:
        self.d = d
        self.breakpoints = tuple(_quad(b, d) for b in breakpoints)
        self.pieces = tuple((_quad(s, d), _quad(c, d)) for s, c in pieces)
        self.source = source
        if self.breakpoints[0] != 0 or self.breakpoints[-1] != 1:
            raise DimensionError("breakpoints must run from 0 to 1")
        if any(a >= b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise DimensionError("breakpoints must increase")
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise DimensionError(f"{len(self.pieces)} pieces for {len(self.breakpoints) - 1} intervals")
        for i in range(1, len(self.pieces)):
            t = self.breakpoints[i]
            if _value(self.pieces[i - 1], t) != _value(self.pieces[i], t):
                raise RangeViolationError(f"pieces disagree at t = {t}")
        for i, t in enumerate(self.breakpoints):
            value = _value(self.pieces[min(i, len(self.pieces) - 1)], t)
            if value < 0 or value > 1:
                raise RangeViolationError(f"value {value} at t = {t} leaves [0,1]")

    @classmethod
    def constant(cls, value, d: int = 5) -> SegmentFunction:
        return cls((0, 1), ((0, value),), d)

    def __repr__(self) -> str:
        return f"SegmentFunction(breakpoints={[str(b) for b in self.breakpoints]}, pieces={len(self.pieces)})"

    def _index(self, t) -> int:
        for i in range(len(self.pieces)):
            if t <= self.breakpoints[i + 1]:
                return i
        return len(self.pieces) - 1

    def __call__(self, t) -> QuadExt:
        t = _quad(t, self.d)
        if t < 0 or t > 1:
            raise DimensionError(f"t = {t} lies outside [0,1]")
        return _value(self.pieces[self._index(t)], t)

    def normalized(self) -> SegmentFunction:
        breakpoints, pieces = [self.breakpoints[0]], [self.pieces[0]]
        for t, piece in zip(self.breakpoints[1:-1], self.pieces[1:]):
            if piece != pieces[-1]:
                breakpoints.append(t)
                pieces.append(piece)
        breakpoints.append(self.breakpoints[-1])
        return SegmentFunction(breakpoints, pieces, self.d, self.source)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SegmentFunction):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.breakpoints == b.breakpoints and a.pieces == b.pieces

    __hash__ = None

    def is_zero(self) -> bool:
        return all(s == 0 and c == 0 for s, c in self.pieces)

    def _cells(self, other: SegmentFunction) -> list:
        merged = sorted(set(self.breakpoints) | set(other.breakpoints))
        cells = []
        for a, b in zip(merged, merged[1:]):
            mid = (a + b) / 2
            cells.append((a, b, self.pieces[self._index(mid)], other.pieces[other._index(mid)]))
        return cells

    def _combine(self, other: SegmentFunction, combine, bound, use_max: bool) -> SegmentFunction:
        cells = [(a, b, combine(u, v), (QuadExt(0, 0, self.d), _quad(bound, self.d))) for a, b, u, v in self._cells(other)]
        return _assemble(_envelope(cells, use_max), self.d)

    def oplus(self, other: SegmentFunction) -> SegmentFunction:
        return self._combine(other, _add, 1, False)

    def otimes(self, other: SegmentFunction) -> SegmentFunction:
        return self._combine(other, lambda u, v: (u[0] + v[0], u[1] + v[1] - 1), 0, True)

    def minus(self, other: SegmentFunction) -> SegmentFunction:
        return self._combine(other, lambda u, v: (u[0] - v[0], u[1] - v[1]), 0, True)

    def neg(self) -> SegmentFunction:
        return SegmentFunction(self.breakpoints, [(-s, 1 - c) for s, c in self.pieces], self.d)

    def join(self, other: SegmentFunction) -> SegmentFunction:
        return _assemble(_envelope(self._cells(other), True), self.d)

    def meet(self, other: SegmentFunction) -> SegmentFunction:
        return _assemble(_envelope(self._cells(other), False), self.d)

    def to_json(self) -> dict:
        return {
            "breakpoints": [str(b) for b in self.breakpoints],
            "pieces": [{"slope": str(s), "intercept": str(c)} for s, c in self.pieces],
        }


def _value(piece, t):
    return piece[0] * t + piece[1]


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _envelope(cells, use_max: bool) -> list:
    """Pointwise max or min of two affine pieces per interval, split where they cross."""
    result = []
    for a, b, u, v in cells:
        gap_a = _value(u, a) - _value(v, a)
        gap_b = _value(u, b) - _value(v, b)
        if gap_a.sign() * gap_b.sign() < 0:
            cross = (v[1] - u[1]) / (u[0] - v[0])
            pieces = [(a, cross, gap_a), (cross, b, gap_b)]
        else:
            pieces = [(a, b, gap_a if gap_a != 0 else gap_b)]
        for lo, hi, gap in pieces:
            first = gap >= 0
            result.append((lo, hi, u if first == use_max else v))
    return result


def _assemble(intervals, d: int) -> SegmentFunction:
    breakpoints = [intervals[0][0]] + [hi for _, hi, _ in intervals]
    return SegmentFunction(breakpoints, [p for _, _, p in intervals], d).normalized()


def restrict(f: McNFunction, segment: EigenSegment) -> SegmentFunction:
    """t -> f(t*w), cut where t*w crosses the cell walls of f's domain."""
    if f.n != segment.n:
        raise DimensionError(f"a function of arity {f.n} restricted to a segment in dimension {segment.n}")
    zero, one = QuadExt(0, 0, segment.d), QuadExt(1, 0, segment.d)
    spans = []
    for simplex, piece in f.cells():
        lo, hi = zero, one
        for functional in simplex.functionals:
            slope = sum((c * x for c, x in zip(functional.coeffs, segment.w)), zero)
            offset = functional.offset
            if slope == 0:
                if offset < 0:
                    lo, hi = one, zero
                continue
            root = -offset / slope
            if slope > 0:
                lo = max(lo, root)
            else:
                hi = min(hi, root)
        if lo < hi:
            slope = sum((c * x for c, x in zip(piece.coeffs, segment.w)), zero)
            spans.append((lo, hi, (slope, zero + piece.offset)))
    cuts = sorted({t for lo, hi, _ in spans for t in (lo, hi)})
    intervals = []
    for a, b in zip(cuts, cuts[1:]):
        piece = next(p for lo, hi, p in spans if lo <= a and b <= hi)
        intervals.append((a, b, piece))
    restricted = _assemble(intervals, segment.d)
    restricted.source = f
    return restricted


def sigma_eigen(s: SegmentFunction, lam: QuadExt) -> SegmentFunction:
    """t -> s(lam*t), the restriction of f o L when L acts on the segment by lam."""
    if not 0 < lam < 1:
        raise RangeViolationError(f"the eigenvalue {lam} must lie strictly between 0 and 1")
    breakpoints = [QuadExt(0, 0, s.d)]
    pieces = []
    for i, (slope, intercept) in enumerate(s.pieces):
        pieces.append((slope * lam, intercept))
        end = s.breakpoints[i + 1] / lam
        if end >= 1:
            break
        breakpoints.append(end)
    breakpoints.append(QuadExt(1, 0, s.d))
    return SegmentFunction(breakpoints, pieces, s.d).normalized()


@dataclass(frozen=True)
class Figure:
    matrix: UnimodularMatrix
    eigenvalue: QuadExt
    segment: EigenSegment

    def to_json(self) -> dict:
        return {
            "L": [list(row) for row in self.matrix.rows],
            "lambda": str(self.eigenvalue),
            "w": self.segment.to_json(),
        }


def build_eigen_figure() -> Figure:
    """L = [[2,1],[1,1]]^-1 with its contracting eigenvector scaled into [0,1/2]^2."""
    matrix = UnimodularMatrix(((2, 1), (1, 1))).inverse()
    eigenvalue = QuadExt(Fraction(3, 2), Fraction(-1, 2), 5)
    segment = EigenSegment((QuadExt(Fraction(1, 2), 0, 5), QuadExt(Fraction(-1, 4), Fraction(1, 4), 5)), 5)
    figure = Figure(matrix, eigenvalue, segment)
    if not verify_eigen(matrix, eigenvalue, segment):
        raise RangeViolationError("the figure data fail the eigen check")
    return figure


def verify_eigen(matrix: UnimodularMatrix, lam, segment: EigenSegment) -> bool:
    """L w = lam w, 0 < lam < 1 and w inside the open cube."""
    if matrix.k != segment.n:
        raise DimensionError(f"{matrix.k}x{matrix.k} matrix against a segment in dimension {segment.n}")
    lam = _quad(lam, segment.d)
    image = matrix.apply(segment.w)
    ok = all(a == lam * b for a, b in zip(image, segment.w)) and 0 < lam < 1 and all(c > 0 for c in segment.w)
    logger.debug(f"Eigen check for lambda={lam}: {ok}")
    return ok


def no_nonzero_rational_on_segment(segment: EigenSegment) -> bool:
    """Whether the origin is the only rational point of the segment."""
    rational_part = tuple(c.a for c in segment.w)
    surd_part = tuple(c.b for c in segment.w)
    origin = (Fraction(0),) * segment.n
    return affine_dimension([origin, rational_part, surd_part]) == 2


def kernel_witness(segment: EigenSegment, lam: QuadExt, c=None, axis: int = 1) -> dict:
    """A hat on the strip {x_axis > c} vanishing on lam*E but not on E.

    c defaults to the simplest rational strictly between lam*w_axis and w_axis.
    """
    top = segment.w[axis - 1]
    low = lam * top
    c = simplest_between(low, top) if c is None else Fraction(c)
    strip = AffineFunctional.coordinate(segment.n, axis - 1).shift(-c)
    g = hat_function(segment.n, [strip])
    restricted = restrict(g, segment)
    image = sigma_eigen(restricted, lam)
    certificate = {
        "strip": f"x{axis} > {format_rational(c)}",
        "c": format_rational(c),
        "strip_misses_lambda_segment": c >= low,
        "strip_meets_segment": c < top,
        "restriction_nonzero": not restricted.is_zero(),
        "sigma_image_zero": image.is_zero(),
        "g_at_w_positive": restricted(1) > 0,
        "restriction": restricted.to_json(),
    }
    certificate["passes"] = certificate["restriction_nonzero"] and certificate["sigma_image_zero"]
    if not certificate["passes"]:
        logger.warning(f"Kernel witness failed for c={format_rational(c)}")
    return certificate


def coordinate_preimages(figure: Figure) -> dict:
    """k_i = 0 v (row_i(L^-1) . x) ^ 1 satisfies sigma(k_i) = x_i on the segment."""
    inverse = figure.matrix.inverse()
    n = figure.segment.n
    report = {}
    for i, row in enumerate(inverse.rows, start=1):
        body = LGroupFunction.from_functional(n, AffineFunctional(row, 0))
        k = unit_interval_part(meet(join(body, LGroupFunction.constant(n, 0)), LGroupFunction.constant(n, 1)))
        recovered = sigma_eigen(restrict(k, figure.segment), figure.eigenvalue)
        target = restrict(McNFunction.coordinate(n, i), figure.segment)
        report[f"k{i}"] = list(row)
        report[f"recovers_x{i}"] = recovered == target
    report["passes"] = all(report[f"recovers_x{i}"] for i in range(1, n + 1))
    return report


def apply_to_rational_point(matrix: UnimodularMatrix, point) -> tuple:
    """L p together with whether den(L p) = den(p)."""
    point = as_point(point)
    image = matrix.apply(point)
    return image, den(image) == den(point)


def eigen_certificate() -> dict:
    """Everything the eigen-segment construction claims, checked exactly."""
    figure = build_eigen_figure()
    certificate = figure.to_json()
    certificate["eigen"] = verify_eigen(figure.matrix, figure.eigenvalue, figure.segment)
    certificate["no_nonzero_rational_point"] = no_nonzero_rational_on_segment(figure.segment)
    certificate["residually_finite"] = is_residually_finite(figure.segment.descriptor()).value
    certificate["kernel_witness"] = kernel_witness(figure.segment, figure.eigenvalue)
    certificate["negative_control"] = kernel_witness(figure.segment, figure.eigenvalue, c=Fraction(1, 10))
    certificate["coordinate_preimages"] = coordinate_preimages(figure)
    certificate["passes"] = (
        certificate["eigen"]
        and certificate["no_nonzero_rational_point"]
        and not certificate["residually_finite"]
        and certificate["kernel_witness"]["passes"]
        and not certificate["negative_control"]["passes"]
        and certificate["coordinate_preimages"]["passes"]
    )
    logger.info(f"Eigen-segment certificate passes: {certificate['passes']}")
    return certificate
