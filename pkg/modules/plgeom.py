# modules/plgeom.py
"""Rational polyhedral geometry in [0,1]^n for n <= 3.

Simplices, simplicial complexes, affine functionals and integer affine maps,
with exact refinement, hyperplane subdivision, images under Z-maps and
rational point censuses. All arithmetic is over Fractions.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations, product

from sympy import Matrix

from modules.errors import (
    CarrierMismatchError,
    DimensionError,
    OutsideCarrierError,
)
from modules.exactnum import as_point, format_rational, in_unit_cube, parse_rational

logger = logging.getLogger(__name__)

MAX_AMBIENT_DIMENSION = 3


# ---------------------------------------------------------------------------
# exact linear algebra over Fractions (tiny systems only)
# ---------------------------------------------------------------------------

def _row_reduce(rows):
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(matrix, rhs):
    """Unique solution of matrix * x = rhs, or None."""
    if not matrix:
        return None
    k = len(matrix[0])
    reduced, pivots = _row_reduce([list(row) + [b] for row, b in zip(matrix, rhs)])
    if k in pivots or len(pivots) < k:
        return None
    solution = [Fraction(0)] * k
    for row, col in zip(reduced, pivots):
        solution[col] = row[k]
    return tuple(solution)


def affine_dimension(points) -> int:
    """Dimension of the affine hull; -1 for no points."""
    points = list(points)
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return len(_row_reduce(diffs)[1])


def _determinant(rows) -> Fraction:
    m = [[Fraction(v) for v in r] for r in rows]
    size = len(m)
    det = Fraction(1)
    for c in range(size):
        pivot = next((i for i in range(c, size) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, size):
            if m[i][c] != 0:
                factor = m[i][c] / m[c][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return det


# ---------------------------------------------------------------------------
# affine functionals and maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineFunctional:
    """x -> coeffs . x + offset."""

    coeffs: tuple
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "offset", Fraction(self.offset))

    @classmethod
    def constant(cls, n: int, value) -> AffineFunctional:
        return cls((0,) * n, value)

    @classmethod
    def coordinate(cls, n: int, i: int) -> AffineFunctional:
        return cls(tuple(1 if j == i else 0 for j in range(n)), 0)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __call__(self, point) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, point)), self.offset)

    def __add__(self, other: AffineFunctional) -> AffineFunctional:
        return AffineFunctional(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.offset + other.offset)

    def __sub__(self, other: AffineFunctional) -> AffineFunctional:
        return AffineFunctional(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.offset - other.offset)

    def __neg__(self) -> AffineFunctional:
        return AffineFunctional(tuple(-a for a in self.coeffs), -self.offset)

    def scale(self, factor) -> AffineFunctional:
        return AffineFunctional(tuple(factor * a for a in self.coeffs), factor * self.offset)

    def shift(self, amount) -> AffineFunctional:
        return AffineFunctional(self.coeffs, self.offset + amount)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs) and self.offset.denominator == 1

    def integral(self) -> AffineFunctional:
        """The multiple by the least positive integer that clears all denominators."""
        factor = math.lcm(*(c.denominator for c in self.coeffs), self.offset.denominator)
        return self.scale(factor)

    def compose(self, amap: AffineMap) -> AffineFunctional:
        """self o amap."""
        coeffs = [Fraction(0)] * amap.n
        offset = self.offset
        for a, row, b in zip(self.coeffs, amap.matrix, amap.offset):
            for j, m in enumerate(row):
                coeffs[j] += a * m
            offset += a * b
        return AffineFunctional(tuple(coeffs), offset)


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix x + offset with integer entries."""

    matrix: tuple
    offset: tuple

    def __post_init__(self):
        matrix = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        offset = tuple(Fraction(v) for v in self.offset)
        if any(v.denominator != 1 for row in matrix for v in row) or any(v.denominator != 1 for v in offset):
            raise ValueError("affine map entries must be integers")
        if len(offset) != len(matrix) or len({len(row) for row in matrix}) > 1:
            raise DimensionError("inconsistent affine map shape")
        object.__setattr__(self, "matrix", tuple(tuple(int(v) for v in row) for row in matrix))
        object.__setattr__(self, "offset", tuple(int(v) for v in offset))

    @classmethod
    def identity(cls, n: int) -> AffineMap:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n)

    @classmethod
    def from_functionals(cls, rows) -> AffineMap:
        return cls(tuple(r.coeffs for r in rows), tuple(r.offset for r in rows))

    @property
    def m(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def rows(self) -> tuple:
        return tuple(AffineFunctional(row, b) for row, b in zip(self.matrix, self.offset))

    def apply(self, point) -> tuple:
        return tuple(row(point) for row in self.rows)

    def is_unimodular(self) -> bool:
        return self.m == self.n and abs(Matrix(self.matrix).det()) == 1


# ---------------------------------------------------------------------------
# simplices and complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalSimplex:
    """Convex hull of affinely independent rational points of [0,1]^n."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(sorted({as_point(v) for v in self.vertices}))
        if len(verts) != len(self.vertices):
            raise DimensionError("a simplex cannot repeat a vertex")
        if len({len(v) for v in verts}) != 1:
            raise DimensionError("simplex vertices live in different dimensions")
        if not all(in_unit_cube(v) for v in verts):
            raise DimensionError("simplex vertices must lie in the unit cube")
        if affine_dimension(verts) != len(verts) - 1:
            raise DimensionError("simplex vertices are affinely dependent")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def _trusted(cls, vertices) -> RationalSimplex:
        simplex = cls.__new__(cls)
        object.__setattr__(simplex, "vertices", tuple(sorted(vertices)))
        return simplex

    @property
    def n(self) -> int:
        return len(self.vertices[0])

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @cached_property
    def bbox(self) -> tuple:
        lows = tuple(min(c) for c in zip(*self.vertices))
        highs = tuple(max(c) for c in zip(*self.vertices))
        return lows, highs

    @cached_property
    def centroid(self) -> tuple:
        k = len(self.vertices)
        return tuple(sum(c) / k for c in zip(*self.vertices))

    @cached_property
    def functionals(self) -> tuple:
        """Barycentric coordinates as affine functionals (full-dimensional simplices only)."""
        if self.dim != self.n:
            raise DimensionError("barycentric functionals need a full-dimensional simplex")
        n = self.n
        system = [[v[row] for v in self.vertices] for row in range(n)] + [[1] * (n + 1)]
        result = []
        for i in range(n + 1):
            # row i of the inverse: solve M^T y = e_i
            transposed = [[system[r][c] for r in range(n + 1)] for c in range(n + 1)]
            y = solve(transposed, [int(c == i) for c in range(n + 1)])
            result.append(AffineFunctional(y[:n], y[n]))
        return tuple(result)

    def barycentric(self, point):
        """Barycentric coordinates of a point of the affine hull, else None."""
        k = len(self.vertices)
        matrix = [[v[row] for v in self.vertices] for row in range(self.n)] + [[1] * k]
        return solve(matrix, list(point) + [1])

    def contains(self, point) -> bool:
        lows, highs = self.bbox
        if any(c < lo or c > hi for c, lo, hi in zip(point, lows, highs)):
            return False
        if self.dim == self.n:
            return all(f(point) >= 0 for f in self.functionals)
        weights = self.barycentric(point)
        return weights is not None and all(w >= 0 for w in weights)

    def volume(self) -> Fraction:
        """n-dimensional volume; zero for lower-dimensional simplices."""
        if self.dim != self.n:
            return Fraction(0)
        base = self.vertices[0]
        rows = [[a - b for a, b in zip(v, base)] for v in self.vertices[1:]]
        return abs(_determinant(rows)) / math.factorial(self.n)

    def faces(self, k: int) -> list:
        return [RationalSimplex._trusted(c) for c in combinations(self.vertices, k + 1)]

    def to_json(self) -> list:
        return [[format_rational(c) for c in v] for v in self.vertices]


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite rational complex in [0,1]^n, listed by its maximal simplices.

    Maximal cells always have disjoint interiors. Only the cube triangulation is
    known to be face-to-face; refinements, overlays and composites may have
    hanging vertices.
    """

    n: int
    simplices: tuple

    def __post_init__(self):
        if not 1 <= self.n <= MAX_AMBIENT_DIMENSION:
            raise DimensionError(f"ambient dimension {self.n} is outside 1..{MAX_AMBIENT_DIMENSION}")
        cells = tuple(sorted(set(self.simplices), key=lambda s: (-s.dim, s.vertices)))
        if any(s.n != self.n for s in cells):
            raise DimensionError("simplex dimension does not match the complex")
        if cells and cells[0].dim != cells[-1].dim:
            vertex_sets = [frozenset(s.vertices) for s in cells]
            cells = tuple(
                s for i, s in enumerate(cells)
                if not any(vertex_sets[i] < other for other in vertex_sets[:i])
            )
        object.__setattr__(self, "simplices", cells)

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def dimension(self) -> int:
        return max((s.dim for s in self.simplices), default=-1)

    @property
    def is_empty(self) -> bool:
        return not self.simplices

    @property
    def is_pure(self) -> bool:
        return len({s.dim for s in self.simplices}) <= 1

    @property
    def is_full(self) -> bool:
        """Pure of the ambient dimension."""
        return bool(self.simplices) and self.is_pure and self.dimension == self.n

    def vertices(self) -> list:
        return sorted({v for s in self.simplices for v in s.vertices})

    def faces(self, k: int) -> list:
        found = {f.vertices: f for s in self.simplices if s.dim >= k for f in s.faces(k)}
        return [found[key] for key in sorted(found)]

    def locate(self, point) -> int:
        """Index of the first maximal simplex containing the point."""
        point = as_point(point)
        for i, s in enumerate(self.simplices):
            if s.contains(point):
                return i
        raise OutsideCarrierError(f"point {tuple(map(format_rational, point))} lies outside the carrier")

    def contains(self, point) -> bool:
        point = as_point(point)
        return any(s.contains(point) for s in self.simplices)

    def volume(self) -> Fraction:
        return sum((s.volume() for s in self.simplices), Fraction(0))

    def to_json(self) -> dict:
        return {"n": self.n, "simplices": [s.to_json() for s in self.simplices]}

    @classmethod
    def from_json(cls, data: dict) -> SimplicialComplex:
        simplices = [
            RationalSimplex(tuple(tuple(parse_rational(c) for c in v) for v in s)) for s in data["simplices"]
        ]
        return cls(int(data["n"]), tuple(simplices))


def triangulate_cube(n: int) -> SimplicialComplex:
    """Kuhn triangulation of [0,1]^n into n! simplices."""
    if not 1 <= n <= MAX_AMBIENT_DIMENSION:
        raise DimensionError(f"cube dimension {n} is outside 1..{MAX_AMBIENT_DIMENSION}")
    simplices = []
    for order in permutations(range(n)):
        vertex = [Fraction(0)] * n
        chain = [tuple(vertex)]
        for axis in order:
            vertex[axis] = Fraction(1)
            chain.append(tuple(vertex))
        simplices.append(RationalSimplex._trusted(chain))
    return SimplicialComplex(n, tuple(simplices))


# ---------------------------------------------------------------------------
# polytopes: vertex enumeration and pulling triangulation
# ---------------------------------------------------------------------------

def triangulate_polytope(points, tight) -> list:
    """Pulling triangulation of a polytope given by its vertices.

    ``tight[i]`` is the set of constraint ids vanishing at ``points[i]``; faces
    are the vertex sets cut out by single constraints. The apex of every face
    is its lexicographically smallest vertex, so two polytopes sharing a face
    triangulate it identically.
    """
    points = list(points)
    memo = {}

    def pull(face):
        if face in memo:
            return memo[face]
        dim = affine_dimension(points[i] for i in face)
        if len(face) == dim + 1:
            result = [face]
        else:
            apex = min(face, key=lambda i: points[i])
            result = []
            seen = set()
            for c in sorted(set().union(*(tight[i] for i in face)), key=repr):
                sub = frozenset(i for i in face if c in tight[i])
                if apex in sub or sub in seen or len(sub) < dim:
                    continue
                seen.add(sub)
                if affine_dimension(points[i] for i in sub) != dim - 1:
                    continue
                result.extend(s | {apex} for s in pull(sub))
        memo[face] = result
        return result

    cells = pull(frozenset(range(len(points))))
    return [RationalSimplex._trusted(tuple(points[i] for i in cell)) for cell in cells]


def polytope_vertices(functionals, n: int) -> list:
    """Vertices of {x : f(x) >= 0 for all f} by solving every n-subset of constraints."""
    found = set()
    for combo in combinations(functionals, n):
        x = solve([f.coeffs for f in combo], [-f.offset for f in combo])
        if x is not None and all(f(x) >= 0 for f in functionals):
            found.add(x)
    return sorted(found)


def _boxes_overlap(first: RationalSimplex, second: RationalSimplex) -> bool:
    (lo1, hi1), (lo2, hi2) = first.bbox, second.bbox
    return all(max(a, c) < min(b, d) for a, b, c, d in zip(lo1, hi1, lo2, hi2))


def intersect_simplices(first: RationalSimplex, second: RationalSimplex) -> list:
    """Triangulated full-dimensional intersection of two full-dimensional simplices."""
    if first == second:
        return [first]
    if all(second.contains(v) for v in first.vertices):
        return [first]
    if all(first.contains(v) for v in second.vertices):
        return [second]
    if not _boxes_overlap(first, second):
        return []
    functionals = first.functionals + second.functionals
    points = polytope_vertices(functionals, first.n)
    if affine_dimension(points) < first.n:
        return []
    tight = [frozenset(c for c, f in enumerate(functionals) if f(p) == 0) for p in points]
    return triangulate_polytope(points, tight)


def split_simplex(simplex: RationalSimplex, h: AffineFunctional) -> tuple:
    """Pieces of the simplex where h <= 0 and where h >= 0."""
    values = [h(v) for v in simplex.vertices]
    if all(v >= 0 for v in values):
        return [], [simplex]
    if all(v <= 0 for v in values):
        return [simplex], []
    k = len(values)
    cut = k  # id of the constraint h = 0
    negative, positive = [], []
    for i, (v, value) in enumerate(zip(simplex.vertices, values)):
        tight = frozenset(j for j in range(k) if j != i) | ({cut} if value == 0 else frozenset())
        if value <= 0:
            negative.append((v, tight))
        if value >= 0:
            positive.append((v, tight))
    for i, j in combinations(range(k), 2):
        if values[i] * values[j] < 0:
            t = values[i] / (values[i] - values[j])
            u, w = simplex.vertices[i], simplex.vertices[j]
            point = tuple(a + t * (b - a) for a, b in zip(u, w))
            tight = frozenset(l for l in range(k) if l not in (i, j)) | {cut}
            negative.append((point, tight))
            positive.append((point, tight))
    return (
        triangulate_polytope([p for p, _ in negative], [t for _, t in negative]),
        triangulate_polytope([p for p, _ in positive], [t for _, t in positive]),
    )


# ---------------------------------------------------------------------------
# complex-level operations
# ---------------------------------------------------------------------------

def refine_with_parents(first: SimplicialComplex, second: SimplicialComplex) -> list:
    """Cells of the common refinement as (simplex, index in first, index in second)."""
    if first.n != second.n:
        raise DimensionError(f"ambient dimensions differ: {first.n} and {second.n}")
    if not (first.is_full and second.is_full):
        raise DimensionError("common refinement needs full-dimensional complexes")
    if first.simplices == second.simplices:
        return [(s, i, i) for i, s in enumerate(first.simplices)]
    index = {s: j for j, s in enumerate(second.simplices)}
    cells = []
    for i, s1 in enumerate(first.simplices):
        j = index.get(s1)
        if j is not None:
            cells.append((s1, i, j))
            continue
        for j, s2 in enumerate(second.simplices):
            if not _boxes_overlap(s1, s2):
                continue
            cells.extend((piece, i, j) for piece in intersect_simplices(s1, s2))
    covered = sum((s.volume() for s, _, _ in cells), Fraction(0))
    if covered != first.volume() or covered != second.volume():
        raise CarrierMismatchError(
            f"carriers differ: volumes {first.volume()} and {second.volume()}, overlap {covered}"
        )
    logger.debug(f"Refined {len(first)} x {len(second)} cells into {len(cells)}")
    return cells


def common_refinement(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    """A complex refining both inputs on their common carrier."""
    cells = refine_with_parents(first, second)
    return SimplicialComplex(first.n, tuple(s for s, _, _ in cells))


def subdivide_by_hyperplane(complex_: SimplicialComplex, h: AffineFunctional) -> SimplicialComplex:
    """Refinement on whose cells h has constant sign."""
    cells = []
    for s in complex_.simplices:
        negative, positive = split_simplex(s, h)
        cells.extend(negative)
        cells.extend(positive)
    return SimplicialComplex(complex_.n, tuple(cells))


@dataclass(frozen=True)
class SimplexImage:
    """Image of a simplex under an affine map; ``degenerate`` flags a dimension drop."""

    points: tuple
    dimension: int
    degenerate: bool

    def simplices(self) -> list:
        return hull_simplices(self.points)

    def as_simplex(self) -> RationalSimplex:
        if len(self.points) != self.dimension + 1:
            raise DimensionError("the image is not a simplex")
        return RationalSimplex(self.points)


def image_of_simplex(simplex: RationalSimplex, amap: AffineMap) -> SimplexImage:
    if amap.n != simplex.n:
        raise DimensionError(f"map from dimension {amap.n} applied to a simplex in dimension {simplex.n}")
    points = tuple(sorted({amap.apply(v) for v in simplex.vertices}))
    dimension = affine_dimension(points)
    return SimplexImage(points, dimension, dimension < simplex.dim)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_simplices(points) -> list:
    """Triangulated convex hull of points spanning at most a plane."""
    points = sorted(set(points))
    dimension = affine_dimension(points)
    if dimension <= 0:
        return [RationalSimplex._trusted(points[:1])]
    if dimension == 1:
        return [RationalSimplex._trusted((points[0], points[-1]))]
    if dimension == len(points) - 1:
        return [RationalSimplex._trusted(points)]
    if dimension > 2:
        raise DimensionError("hull triangulation supports at most planar point sets")
    # project onto two coordinates that keep the plane injective
    for axes in combinations(range(len(points[0])), 2):
        projected = {tuple(p[a] for a in axes): p for p in points}
        if len(projected) == len(points) and affine_dimension(projected) == 2:
            break
    flat = sorted(projected)
    lower, upper = [], []
    for p in flat:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(flat):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    ring = [projected[p] for p in lower[:-1] + upper[:-1]]
    apex = ring[0]
    return [RationalSimplex._trusted((apex, ring[i], ring[i + 1])) for i in range(1, len(ring) - 1)]


def subtract_simplex(piece: RationalSimplex, other: RationalSimplex) -> list:
    """Full-dimensional pieces of ``piece`` outside the interior of ``other``."""
    outside = []
    remaining = [piece]
    for f in other.functionals:
        inside = []
        for r in remaining:
            negative, positive = split_simplex(r, f)
            outside.extend(s for s in negative if s.dim == piece.dim)
            inside.extend(positive)
        remaining = inside
        if not remaining:
            break
    return outside


def overlay(n: int, cells) -> SimplicialComplex:
    """Assemble possibly overlapping simplices into cells with disjoint interiors.

    Full-dimensional cells are cut against the ones already accepted; lower
    dimensional cells are kept unless a single full cell contains them. The
    result covers the union but may contain hanging vertices.
    """
    full, lower = [], []
    for s in dict.fromkeys(cells):
        (full if s.dim == n else lower).append(s)
    accepted = []
    for s in full:
        pieces = [s]
        for a in accepted:
            if not _boxes_overlap(s, a):
                continue
            pieces = [p for piece in pieces for p in subtract_simplex(piece, a)]
            if not pieces:
                break
        accepted.extend(pieces)
    kept = [s for s in lower if not any(all(a.contains(v) for v in s.vertices) for a in accepted)]
    logger.debug(f"Overlay: {len(full)} full cells became {len(accepted)}, kept {len(kept)} lower cells")
    return SimplicialComplex(n, tuple(accepted + kept))


def rational_points_with_denominator(complex_: SimplicialComplex, b: int) -> list:
    """Points of the carrier whose coordinates have least common denominator exactly b."""
    if b < 1:
        raise ValueError("the denominator must be positive")
    found = []
    for numerators in product(range(b + 1), repeat=complex_.n):
        if math.gcd(b, *numerators) != 1:
            continue
        point = tuple(Fraction(k, b) for k in numerators)
        if complex_.contains(point):
            found.append(point)
    return found
