# modules/mcnaughton.py
"""McNaughton functions and l-group PL functions over rational complexes.

Functions are stored as one affine piece per maximal cell of a full
dimensional complex. Binary operations refine both domains, then cut every
cell where the result switches between two affine maps, so every stored piece
stays affine. No global normal form is kept: equality is decided on a common
refinement.
"""
from __future__ import annotations

import logging
import random
from fractions import Fraction

from modules.errors import (
    CarrierMismatchError,
    ContinuityError,
    DimensionError,
    EmptyRegionError,
    RangeViolationError,
)
from modules.exactnum import as_point, format_rational, parse_rational
from modules.plgeom import (
    AffineFunctional,
    AffineMap,
    RationalSimplex,
    SimplicialComplex,
    affine_dimension,
    image_of_simplex,
    overlay,
    polytope_vertices,
    rational_points_with_denominator,
    refine_with_parents,
    split_simplex,
    subtract_simplex,
    triangulate_cube,
    triangulate_polytope,
)
from modules.terms import Var, fold, ominus, oplus, random_term, substitute

logger = logging.getLogger(__name__)


class PLFunction:
    """Continuous piecewise-linear function with integer affine pieces."""

    kind = "pl"

    def __init__(self, domain: SimplicialComplex, pieces, *, check: bool = True) -> None:
        pieces = tuple(pieces)
        if not domain.is_full:
            raise DimensionError("a PL function needs a full-dimensional domain")
        if len(pieces) != len(domain.simplices):
            raise DimensionError(f"{len(pieces)} pieces for {len(domain.simplices)} cells")
        self.domain = domain
        self.pieces = pieces
        if check:
            self._validate()

    @classmethod
    def from_cells(cls, n: int, cells, *, check: bool = True):
        """Build from (simplex, piece) pairs in any order."""
        by_cell = {}
        for simplex, piece in cells:
            by_cell.setdefault(simplex, piece)
        domain = SimplicialComplex(n, tuple(by_cell))
        return cls(domain, [by_cell[s] for s in domain.simplices], check=check)

    @property
    def n(self) -> int:
        return self.domain.n

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, cells={len(self.pieces)})"

    def _validate(self) -> None:
        for piece in self.pieces:
            if piece.n != self.n:
                raise DimensionError("piece arity does not match the domain")
            if not piece.is_integral:
                raise ValueError(f"piece {piece} has non-integer coefficients")
        self.vertex_values()

    def vertex_values(self) -> dict:
        """Value at every vertex; raises ContinuityError when cells disagree."""
        values = {}
        for simplex, piece in zip(self.domain.simplices, self.pieces):
            for v in simplex.vertices:
                value = piece(v)
                known = values.setdefault(v, value)
                if known != value:
                    raise ContinuityError(
                        f"pieces disagree at vertex {tuple(map(format_rational, v))}: {known} vs {value}"
                    )
        return values

    def cells(self):
        return zip(self.domain.simplices, self.pieces)

    def eval_at(self, point) -> Fraction:
        point = as_point(point)
        if len(point) != self.n:
            raise DimensionError(f"point of dimension {len(point)} for a function of arity {self.n}")
        return self.pieces[self.domain.locate(point)](point)

    def on(self, domain: SimplicialComplex):
        """The same function re-expressed on a refinement of its domain."""
        if domain.simplices == self.domain.simplices:
            return self
        pieces = [self.pieces[self.domain.locate(s.centroid)] for s in domain.simplices]
        return type(self)(domain, pieces, check=False)

    def is_zero(self) -> bool:
        return all(not any(p.coeffs) and p.offset == 0 for p in self.pieces)

    def to_json(self) -> dict:
        data = self.domain.to_json()
        data["pieces"] = [
            {"cell": i, "coeffs": [int(c) for c in p.coeffs], "offset": int(p.offset)}
            for i, p in enumerate(self.pieces)
        ]
        return data

    @classmethod
    def from_json(cls, data: dict):
        listed = [RationalSimplex(tuple(tuple(parse_rational(c) for c in v) for v in s)) for s in data["simplices"]]
        by_cell = {listed[item["cell"]]: AffineFunctional(item["coeffs"], item["offset"]) for item in data["pieces"]}
        domain = SimplicialComplex(int(data["n"]), tuple(listed))
        return cls(domain, [by_cell[s] for s in domain.simplices])

    # constructors on the Kuhn-triangulated cube

    @classmethod
    def constant(cls, n: int, value):
        cube = triangulate_cube(n)
        piece = AffineFunctional.constant(n, value)
        return cls(cube, [piece] * len(cube.simplices))

    @classmethod
    def coordinate(cls, n: int, i: int):
        """The projection x_i, 1 <= i <= n."""
        if not 1 <= i <= n:
            raise DimensionError(f"coordinate x{i} outside arity {n}")
        return cls.from_functional(n, AffineFunctional.coordinate(n, i - 1))

    @classmethod
    def from_functional(cls, n: int, functional: AffineFunctional):
        cube = triangulate_cube(n)
        return cls(cube, [functional] * len(cube.simplices))


class LGroupFunction(PLFunction):
    """Element of the free unital l-group: no range constraint."""

    kind = "lgroup"

    def __add__(self, other: LGroupFunction) -> LGroupFunction:
        return add(self, other)

    def __sub__(self, other: LGroupFunction) -> LGroupFunction:
        return sub(self, other)

    def __neg__(self) -> LGroupFunction:
        return scalar(self, -1)

    def __mul__(self, k: int) -> LGroupFunction:
        return scalar(self, k)

    __rmul__ = __mul__

    def __or__(self, other: LGroupFunction) -> LGroupFunction:
        return join(self, other)

    def __and__(self, other: LGroupFunction) -> LGroupFunction:
        return meet(self, other)


class McNFunction(PLFunction):
    """McNaughton function: a PL function with values in [0,1]."""

    kind = "mcn"

    def _validate(self) -> None:
        super()._validate()
        for v, value in self.vertex_values().items():
            if not 0 <= value <= 1:
                raise RangeViolationError(f"value {value} at {tuple(map(format_rational, v))} leaves [0,1]")

    def as_lgroup(self) -> LGroupFunction:
        return LGroupFunction(self.domain, self.pieces, check=False)


# ---------------------------------------------------------------------------
# pointwise machinery
# ---------------------------------------------------------------------------

def _same_kind(f: PLFunction, g: PLFunction) -> None:
    if type(f) is not type(g):
        raise TypeError(f"cannot combine {type(f).__name__} with {type(g).__name__}")
    if f.n != g.n:
        raise CarrierMismatchError(f"arity {f.n} versus {g.n}")


def _aligned(f: PLFunction, g: PLFunction) -> list:
    return [(s, f.pieces[i], g.pieces[j]) for s, i, j in refine_with_parents(f.domain, g.domain)]


def _envelope(cells, use_max: bool) -> list:
    """Cellwise max or min of two affine maps, cutting each cell where they cross."""
    result = []
    for simplex, u, v in cells:
        if u == v:
            result.append((simplex, u))
            continue
        below, above = split_simplex(simplex, u - v)
        result.extend((p, u if use_max else v) for p in above)
        result.extend((p, v if use_max else u) for p in below)
    return result


def _truncated(f: PLFunction, g: PLFunction, combine, bound, use_max: bool, cls):
    _same_kind(f, g)
    if not isinstance(f, cls):
        raise TypeError(f"truncated operations are defined on McNaughton functions, not {type(f).__name__}")
    one = AffineFunctional.constant(f.n, bound)
    cells = [(s, combine(u, v), one) for s, u, v in _aligned(f, g)]
    return cls.from_cells(f.n, _envelope(cells, use_max))


def mv_plus(f: McNFunction, g: McNFunction) -> McNFunction:
    """min(1, f + g)."""
    return _truncated(f, g, lambda u, v: u + v, 1, False, McNFunction)


def mv_times(f: McNFunction, g: McNFunction) -> McNFunction:
    """max(0, f + g - 1)."""
    return _truncated(f, g, lambda u, v: (u + v).shift(-1), 0, True, McNFunction)


def truncated_minus(f: McNFunction, g: McNFunction) -> McNFunction:
    """max(0, f - g)."""
    return _truncated(f, g, lambda u, v: u - v, 0, True, McNFunction)


def mv_neg(f: McNFunction) -> McNFunction:
    """1 - f."""
    if not isinstance(f, McNFunction):
        raise TypeError(f"negation is defined on McNaughton functions, not {type(f).__name__}")
    return McNFunction(f.domain, [(-p).shift(1) for p in f.pieces], check=False)


def join(f: PLFunction, g: PLFunction) -> PLFunction:
    _same_kind(f, g)
    return type(f).from_cells(f.n, _envelope(_aligned(f, g), True))


def meet(f: PLFunction, g: PLFunction) -> PLFunction:
    _same_kind(f, g)
    return type(f).from_cells(f.n, _envelope(_aligned(f, g), False))


mv_join = join
mv_meet = meet


def add(f: LGroupFunction, g: LGroupFunction) -> LGroupFunction:
    _same_kind(f, g)
    return LGroupFunction.from_cells(f.n, [(s, u + v) for s, u, v in _aligned(f, g)])


def sub(f: LGroupFunction, g: LGroupFunction) -> LGroupFunction:
    _same_kind(f, g)
    return LGroupFunction.from_cells(f.n, [(s, u - v) for s, u, v in _aligned(f, g)])


def scalar(f: LGroupFunction, k: int) -> LGroupFunction:
    if int(k) != k:
        raise ValueError("l-group scalars are integers")
    return LGroupFunction(f.domain, [p.scale(int(k)) for p in f.pieces], check=False)


def unit_interval_part(h: LGroupFunction) -> McNFunction:
    """Reinterpret h as a McNaughton function when 0 <= h <= 1."""
    return McNFunction(h.domain, h.pieces)


def equal(f: PLFunction, g: PLFunction) -> bool:
    """Whether f and g agree as functions, decided on a common refinement."""
    _same_kind(f, g)
    return all(u == v for _, u, v in _aligned(f, g))


def eval_at(f: PLFunction, point) -> Fraction:
    return f.eval_at(point)


# ---------------------------------------------------------------------------
# terms, zerosets, hats
# ---------------------------------------------------------------------------

_BINARY = {
    "+": mv_plus,
    ".": mv_times,
    "-": truncated_minus,
    "v": join,
    "^": meet,
}


def from_term(term, n: int) -> McNFunction:
    """The McNaughton function on [0,1]^n denoted by a term."""
    return fold(
        term,
        const=lambda c: McNFunction.constant(n, c),
        var=lambda i: McNFunction.coordinate(n, i),
        neg=mv_neg,
        binary=lambda op, a, b: _BINARY[op](a, b),
    )


def zeroset(f: McNFunction) -> SimplicialComplex:
    """f^-1(0): on each cell the face spanned by the vertices where f vanishes."""
    faces = []
    for simplex, piece in f.cells():
        zeros = tuple(v for v in simplex.vertices if piece(v) == 0)
        if zeros:
            faces.append(RationalSimplex._trusted(zeros))
    return SimplicialComplex(f.n, tuple(faces))


def hat_function(n: int, inequalities) -> McNFunction:
    """A McNaughton function vanishing exactly off the open region {l_j > 0} of the cube.

    Built as 0 v (l_1 ^ ... ^ l_k) ^ 1, each l_j scaled to integer coefficients.
    """
    functionals = [f.integral() for f in inequalities]
    if not functionals:
        raise EmptyRegionError("a region needs at least one inequality")
    if any(f.n != n for f in functionals):
        raise DimensionError("inequality arity does not match n")
    body = LGroupFunction.from_functional(n, functionals[0])
    for f in functionals[1:]:
        body = meet(body, LGroupFunction.from_functional(n, f))
    clipped = meet(join(body, LGroupFunction.constant(n, 0)), LGroupFunction.constant(n, 1))
    hat = unit_interval_part(clipped)
    if hat.is_zero():
        raise EmptyRegionError("the region has empty interior in the cube")
    return hat


# ---------------------------------------------------------------------------
# Z-maps
# ---------------------------------------------------------------------------

class ZMapFn:
    """A map [0,1]^n -> [0,1]^m whose components are McNaughton functions on one domain."""

    def __init__(self, components) -> None:
        components = tuple(components)
        if not components:
            raise DimensionError("a Z-map needs at least one component")
        if any(not isinstance(c, McNFunction) for c in components):
            raise TypeError("Z-map components must be McNaughton functions")
        if len({c.n for c in components}) != 1:
            raise DimensionError("Z-map components have different arities")
        domain = components[0].domain
        for c in components[1:]:
            if c.domain.simplices != domain.simplices:
                domain = SimplicialComplex(domain.n, tuple(s for s, _, _ in refine_with_parents(domain, c.domain)))
        self.domain = domain
        self.components = tuple(c.on(domain) for c in components)

    @classmethod
    def identity(cls, n: int) -> ZMapFn:
        return cls(McNFunction.coordinate(n, i) for i in range(1, n + 1))

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def m(self) -> int:
        return len(self.components)

    def cell_maps(self) -> list:
        return [
            (s, AffineMap.from_functionals([c.pieces[i] for c in self.components]))
            for i, s in enumerate(self.domain.simplices)
        ]

    def apply(self, point) -> tuple:
        return tuple(c.eval_at(point) for c in self.components)

    def then(self, other: ZMapFn) -> ZMapFn:
        """other o self."""
        return ZMapFn(compose(h, self) for h in other.components)


def _closed_overlap(points, simplex: RationalSimplex) -> bool:
    lows, highs = simplex.bbox
    return all(
        min(p[k] for p in points) <= highs[k] and max(p[k] for p in points) >= lows[k] for k in range(len(lows))
    )


def compose(f: PLFunction, g: ZMapFn) -> PLFunction:
    """f o g, refining each cell of g until it maps into single cells of f.

    The cells of the result tile the domain of g but need not meet face to face.
    """
    if f.n != g.m:
        raise DimensionError(f"cannot compose a function of arity {f.n} with a map into dimension {g.m}")
    cells = []
    for cell, gmap in g.cell_maps():
        images = [gmap.apply(v) for v in cell.vertices]
        accepted = []
        for target, piece in f.cells():
            if not _closed_overlap(images, target):
                continue
            pulled = [lam.compose(gmap) for lam in target.functionals]
            if all(p(v) >= 0 for p in pulled for v in cell.vertices):
                parts = [cell]
            else:
                region = list(cell.functionals) + pulled
                points = polytope_vertices(region, g.n)
                if affine_dimension(points) < g.n:
                    continue
                tight = [frozenset(k for k, c in enumerate(region) if c(p) == 0) for p in points]
                parts = triangulate_polytope(points, tight)
            composed = piece.compose(gmap)
            for part in parts:
                fresh = [part]
                for seen, _ in accepted:
                    fresh = [q for p in fresh for q in subtract_simplex(p, seen)]
                accepted.extend((q, composed) for q in fresh)
        covered = sum((s.volume() for s, _ in accepted), Fraction(0))
        if covered != cell.volume():
            raise RangeViolationError("the map leaves the domain of the outer function")
        cells.extend(accepted)
    logger.debug(f"Composed {len(f.pieces)} x {len(g.domain)} cells into {len(cells)}")
    return type(f).from_cells(g.n, cells)


def range_of_zmap(g: ZMapFn) -> SimplicialComplex:
    """The image polyhedron of a Z-map, assembled from the images of its cells."""
    pieces = []
    for cell, gmap in g.cell_maps():
        pieces.extend(image_of_simplex(cell, gmap).simplices())
    return overlay(g.m, pieces)


def denominator_census(complex_: SimplicialComplex, b: int) -> int:
    """Number of points of the carrier with denominator exactly b."""
    return len(rational_points_with_denominator(complex_, b))


def shift_kernel_demo() -> dict:
    """The two-variable shadow of the shift endomorphism's kernel.

    t = (x1 (-) x2) (+) (x2 (-) x1) is nonzero, while t[x2 := x1] is the zero function.
    """
    x1, x2 = Var(1), Var(2)
    term = oplus(ominus(x1, x2), ominus(x2, x1))
    f = from_term(term, 2)
    shifted = substitute(term, {2: x1})
    g = from_term(shifted, 1)
    certificate = {
        "term": str(term),
        "value_at_1_0": format_rational(f.eval_at((1, 0))),
        "value_at_1/2_1/4": format_rational(f.eval_at((Fraction(1, 2), Fraction(1, 4)))),
        "term_is_zero": f.is_zero(),
        "substituted": str(shifted),
        "substituted_is_zero": g.is_zero(),
    }
    certificate["passes"] = not certificate["term_is_zero"] and certificate["substituted_is_zero"]
    logger.info(f"Shift kernel certificate passes: {certificate['passes']}")
    return certificate


def axiom_report(trials: int = 200, seed: int = 0, arities=(1, 2), depth: int = 3) -> dict:
    """The two defining MV equations on random term functions, as exact PL equalities.

    x (+) ~0 = ~0 and ~(~x (+) y) (+) y = ~(~y (+) x) (+) x.
    """
    rng = random.Random(seed)
    failures = []
    for trial in range(trials):
        n = arities[trial % len(arities)]
        s, t = random_term(rng, n, depth), random_term(rng, n, depth)
        f, g = from_term(s, n), from_term(t, n)
        one = McNFunction.constant(n, 1)
        absorbing = equal(mv_plus(f, mv_neg(McNFunction.constant(n, 0))), one)
        lhs = mv_plus(mv_neg(mv_plus(mv_neg(f), g)), g)
        rhs = mv_plus(mv_neg(mv_plus(mv_neg(g), f)), f)
        if not (absorbing and equal(lhs, rhs)):
            failures.append({"n": n, "x": str(s), "y": str(t)})
            logger.warning(f"MV axiom failure on x={s}, y={t}")
        elif trial and trial % 50 == 0:
            logger.debug(f"Axiom suite: {trial} of {trials} trials done")
    report = {"trials": trials, "seed": seed, "failures": failures}
    report["passes"] = not failures
    logger.info(f"MV axiom suite over {trials} trials passes: {report['passes']}")
    return report
