# modules/finitemv.py
"""Finite MV-algebras, the Chang algebra, evaluation homomorphisms and
brute-force hopficity checks."""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import Matrix, Rational
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from modules.errors import (
    DimensionError,
    RangeViolationError,
    SizeBoundError,
    UnsupportedDescriptorError,
    ZeroFunctionError,
)
from modules.exactnum import QuadExt, den, format_rational
from modules.mcnaughton import from_term, mv_neg, mv_plus
from modules.plgeom import SimplicialComplex, affine_dimension
from modules.terms import eval_term, random_term

logger = logging.getLogger(__name__)

MAX_FINITE_ALGEBRA_SIZE = 64
MAX_SNF_SIZE = 8


# ---------------------------------------------------------------------------
# chains and their products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MVChain:
    """The chain {0, 1/d, ..., 1}; element i stands for i/d."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"a chain needs d >= 1, got {self.d}")

    @property
    def name(self) -> str:
        return f"Ł{self.d + 1}"

    @property
    def size(self) -> int:
        return self.d + 1

    def elements(self) -> range:
        return range(self.d + 1)

    def _check(self, *xs) -> None:
        for x in xs:
            if not 0 <= x <= self.d:
                raise RangeViolationError(f"{x} is not an element of {self.name}")

    def value(self, x: int) -> Fraction:
        self._check(x)
        return Fraction(x, self.d)

    def oplus(self, x: int, y: int) -> int:
        self._check(x, y)
        return min(self.d, x + y)

    def neg(self, x: int) -> int:
        self._check(x)
        return self.d - x

    def otimes(self, x: int, y: int) -> int:
        self._check(x, y)
        return max(0, x + y - self.d)

    def minus(self, x: int, y: int) -> int:
        self._check(x, y)
        return max(0, x - y)

    def join(self, x: int, y: int) -> int:
        self._check(x, y)
        return max(x, y)

    def meet(self, x: int, y: int) -> int:
        self._check(x, y)
        return min(x, y)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.d


@dataclass(frozen=True)
class FiniteMV:
    """A finite product of chains; elements are integer tuples."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(f if isinstance(f, MVChain) else MVChain(int(f)) for f in self.factors)
        if not factors:
            raise ValueError("a product needs at least one factor")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, *ds: int) -> FiniteMV:
        return cls(tuple(MVChain(d) for d in ds))

    @property
    def name(self) -> str:
        return "×".join(f.name for f in self.factors)

    @property
    def size(self) -> int:
        return math.prod(f.size for f in self.factors)

    def elements(self) -> list:
        return list(product(*(f.elements() for f in self.factors)))

    def _pairwise(self, op: str, x, y) -> tuple:
        if len(x) != len(self.factors) or len(y) != len(self.factors):
            raise RangeViolationError(f"element of the wrong shape for {self.name}")
        return tuple(getattr(f, op)(a, b) for f, a, b in zip(self.factors, x, y))

    def oplus(self, x, y) -> tuple:
        return self._pairwise("oplus", x, y)

    def otimes(self, x, y) -> tuple:
        return self._pairwise("otimes", x, y)

    def join(self, x, y) -> tuple:
        return self._pairwise("join", x, y)

    def meet(self, x, y) -> tuple:
        return self._pairwise("meet", x, y)

    def neg(self, x) -> tuple:
        if len(x) != len(self.factors):
            raise RangeViolationError(f"element of the wrong shape for {self.name}")
        return tuple(f.neg(a) for f, a in zip(self.factors, x))

    @property
    def zero(self) -> tuple:
        return (0,) * len(self.factors)

    @property
    def one(self) -> tuple:
        return tuple(f.d for f in self.factors)


class FiniteHom:
    """A map between finite MV-algebras given by its table."""

    def __init__(self, domain: FiniteMV, codomain: FiniteMV, table: dict, *, verify: bool = True) -> None:
        self.domain = domain
        self.codomain = codomain
        self.table = dict(table)
        if verify:
            self._verify()

    def _verify(self) -> None:
        elements = self.domain.elements()
        if set(self.table) != set(elements):
            raise ValueError("the table must list every element of the domain")
        if self.table[self.domain.zero] != self.codomain.zero:
            raise ValueError("a homomorphism sends 0 to 0")
        for x in elements:
            if self.table[self.domain.neg(x)] != self.codomain.neg(self.table[x]):
                raise ValueError(f"negation is not preserved at {x}")
            for y in elements:
                if self.table[self.domain.oplus(x, y)] != self.codomain.oplus(self.table[x], self.table[y]):
                    raise ValueError(f"oplus is not preserved at {x}, {y}")

    def __call__(self, x):
        return self.table[tuple(x)]

    def is_surjective(self) -> bool:
        return len(set(self.table.values())) == self.codomain.size

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.table)


def _homs_into_chain(algebra: FiniteMV, target: MVChain) -> list:
    """Atom images c with h(x) = min(e, sum x_i c_i) a homomorphism into the chain."""
    e = target.d
    elements = algebra.elements()
    found = []

    def extend(prefix):
        i = len(prefix)
        if i == len(algebra.factors):
            h = {x: min(e, sum(a * c for a, c in zip(x, prefix))) for x in elements}
            if all(h[algebra.neg(x)] == e - h[x] for x in elements) and all(
                h[algebra.oplus(x, y)] == min(e, h[x] + h[y]) for x in elements for y in elements
            ):
                found.append(h)
            return
        d = algebra.factors[i].d
        for c in range(e + 1):
            # the top of each factor is idempotent, so it must land on 0 or 1
            if c and d * c < e:
                continue
            extend(prefix + (c,))

    extend(())
    return found


def enumerate_endomorphisms(algebra: FiniteMV, max_size: int = MAX_FINITE_ALGEBRA_SIZE) -> list:
    """All endomorphisms, as products of the homomorphisms into each factor chain."""
    if algebra.size > max_size:
        raise SizeBoundError(f"{algebra.name} has {algebra.size} elements, above the bound {max_size}")
    per_component = [_homs_into_chain(algebra, f) for f in algebra.factors]
    logger.debug(f"{algebra.name}: component hom counts {[len(c) for c in per_component]}")
    elements = algebra.elements()
    return [
        FiniteHom(algebra, algebra, {x: tuple(h[x] for h in choice) for x in elements}, verify=False)
        for choice in product(*per_component)
    ]


def is_hopfian_finite(algebra: FiniteMV, max_size: int = MAX_FINITE_ALGEBRA_SIZE) -> bool:
    """Whether every surjective endomorphism is injective."""
    return all(h.is_injective() for h in enumerate_endomorphisms(algebra, max_size) if h.is_surjective())


def hopficity_report(algebra: FiniteMV, max_size: int = MAX_FINITE_ALGEBRA_SIZE) -> dict:
    endos = enumerate_endomorphisms(algebra, max_size)
    surjective = [h for h in endos if h.is_surjective()]
    return {
        "algebra": algebra.name,
        "endo_count": len(endos),
        "surjective_count": len(surjective),
        "hopfian": all(h.is_injective() for h in surjective),
    }


def product_chains_up_to(size: int) -> list:
    """Every product of chains (factors listed in nonincreasing d) with at most ``size`` elements."""
    found = []

    def grow(ds, room, cap):
        if ds:
            found.append(FiniteMV.of(*ds))
        for d in range(min(cap, room - 1), 0, -1):
            grow(ds + (d,), room // (d + 1), d)

    grow((), size, size)
    return found


# ---------------------------------------------------------------------------
# the Chang algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ChangElement:
    """(0, k) is k·ε and (1, -k) is 1 - k·ε, ordered lexicographically."""

    m: int
    k: int

    def __post_init__(self):
        if self.m not in (0, 1):
            raise RangeViolationError(f"integer part must be 0 or 1, got {self.m}")
        if (self.m == 0 and self.k < 0) or (self.m == 1 and self.k > 0):
            raise RangeViolationError(f"({self.m}, {self.k}) is outside [0, 1]")

    def __str__(self) -> str:
        if self.k == 0:
            return str(self.m)
        coefficient = "" if abs(self.k) == 1 else str(abs(self.k))
        if self.m == 0:
            return f"{coefficient}ε"
        return f"1−{coefficient}ε"

    def oplus(self, other: ChangElement) -> ChangElement:
        total = (self.m + other.m, self.k + other.k)
        if total >= (1, 0):
            return CHANG_ONE
        return ChangElement(*total)

    def neg(self) -> ChangElement:
        return ChangElement(1 - self.m, -self.k)

    def otimes(self, other: ChangElement) -> ChangElement:
        return self.neg().oplus(other.neg()).neg()

    def join(self, other: ChangElement) -> ChangElement:
        return max(self, other)

    def meet(self, other: ChangElement) -> ChangElement:
        return min(self, other)


CHANG_ZERO = ChangElement(0, 0)
CHANG_ONE = ChangElement(1, 0)


def chang_window(bound: int) -> list:
    """Elements kε and 1 - kε with 0 <= k <= bound."""
    return [ChangElement(0, k) for k in range(bound + 1)] + [ChangElement(1, -k) for k in range(bound + 1)]


# ---------------------------------------------------------------------------
# separation by finite quotients
# ---------------------------------------------------------------------------

def evaluation_hom(point):
    """f -> f(point)·den(point), a homomorphism of McNaughton functions onto a finite chain."""
    d = den(point)

    def apply(f) -> int:
        scaled = f.eval_at(point) * d
        if scaled.denominator != 1:
            raise RangeViolationError(f"{format_rational(scaled)} is not an integer: f does not have integer pieces")
        return int(scaled)

    return apply


@dataclass(frozen=True)
class Separation:
    """A rational point r, d = den(r), and the image of f in the chain with d + 1 elements."""

    point: tuple
    d: int
    image: int

    @property
    def chain(self) -> MVChain:
        return MVChain(self.d)

    def apply(self, g) -> int:
        return evaluation_hom(self.point)(g)

    def to_json(self) -> dict:
        return {
            "point": [format_rational(c) for c in self.point],
            "d": self.d,
            "image": self.image,
            "image_value": format_rational(Fraction(self.image, self.d)),
        }


def separate(f) -> Separation:
    """A finite quotient in which f does not vanish.

    Every cell of f's domain carries an affine piece, and an affine map that is
    nonzero somewhere on a simplex is nonzero at one of its vertices, so the
    vertex scan is complete.
    """
    values = f.vertex_values()
    positive = [v for v, value in values.items() if value > 0]
    if not positive:
        raise ZeroFunctionError("the zero function cannot be separated from 0")
    point = min(positive, key=lambda v: (den(v), v))
    d = den(point)
    separation = Separation(point, d, int(values[point] * d))
    logger.debug(f"Separated at {separation.to_json()}")
    return separation


def evaluation_chain_report(trials: int = 500, seed: int = 0, max_den: int = 12, arities=(1, 2), depth: int = 3) -> dict:
    """Random (term, rational point) pairs: values land in the chain of the point's
    denominator and evaluation preserves (+) and ~ there."""
    rng = random.Random(seed)
    failures = []
    for trial in range(trials):
        n = arities[trial % len(arities)]
        q = rng.randint(1, max_den)
        point = tuple(Fraction(rng.randint(0, q), q) for _ in range(n))
        s, t = random_term(rng, n, depth), random_term(rng, n, depth)
        f, g = from_term(s, n), from_term(t, n)
        d = den(point)
        try:
            h = evaluation_hom(point)
            hf, hg = h(f), h(g)
            ok = (
                0 <= hf <= d
                and h(mv_plus(f, g)) == min(d, hf + hg)
                and h(mv_neg(f)) == d - hf
                and Fraction(hf, d) == eval_term(s, point)
            )
        except RangeViolationError:
            ok = False
        if not ok:
            failures.append({"x": str(s), "y": str(t), "point": [format_rational(c) for c in point]})
            logger.warning(f"Evaluation chain failure for {s} at {point}")
    report = {"trials": trials, "seed": seed, "max_den": max_den, "failures": failures}
    report["passes"] = not failures
    logger.info(f"Evaluation chain suite over {trials} trials passes: {report['passes']}")
    return report


# ---------------------------------------------------------------------------
# residual finiteness of carriers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalComplex:
    complex: SimplicialComplex


@dataclass(frozen=True)
class QuadSegment:
    """Segment between two points with coordinates in Q(sqrt(D))."""

    start: tuple
    end: tuple


@dataclass(frozen=True)
class ResidualFinitenessResult:
    value: bool
    witness: str


def _split(coord) -> tuple:
    if isinstance(coord, QuadExt):
        return coord.a, coord.b
    return Fraction(coord), Fraction(0)


def _lone_rational_point(s, w0, w1, d: int):
    """Parameter t in Q(sqrt(d)) and the rational point s + t*w, or None.

    On a line that is not rational there is at most one rational point; t
    solves alpha*w1 + beta*w0 = -s1 for t = alpha + beta*sqrt(d).
    """
    def to_sympy(x):
        return Rational(x.numerator, x.denominator)

    system = Matrix([[to_sympy(a), to_sympy(b)] for a, b in zip(w1, w0)])
    target = Matrix([-to_sympy(a[1]) for a in s])
    try:
        solution, free = system.gauss_jordan_solve(target)
    except ValueError:
        return None
    if free.shape[0]:
        return None
    alpha, beta = (Fraction(int(x.p), int(x.q)) for x in solution)
    point = tuple(a[0] + alpha * u + beta * d * v for a, u, v in zip(s, w0, w1))
    return QuadExt(alpha, beta, d), point


def is_residually_finite(carrier) -> ResidualFinitenessResult:
    """Residual finiteness of the McNaughton algebra of a carrier.

    It holds exactly when rational points are dense in the carrier. A segment
    qualifies when it spans a rational line (or is a single rational point).
    """
    if isinstance(carrier, RationalComplex):
        vertex = carrier.complex.vertices()[0]
        return ResidualFinitenessResult(True, f"rational vertex {tuple(map(format_rational, vertex))}")
    if isinstance(carrier, QuadSegment):
        if len(carrier.start) != len(carrier.end):
            raise DimensionError("segment endpoints live in different dimensions")
        s = [_split(c) for c in carrier.start]
        e = [_split(c) for c in carrier.end]
        w0 = tuple(b[0] - a[0] for a, b in zip(s, e))
        w1 = tuple(b[1] - a[1] for a, b in zip(s, e))
        s1 = tuple(a[1] for a in s)
        origin = (Fraction(0),) * len(s)
        if not any(w0) and not any(w1):
            if not any(s1):
                return ResidualFinitenessResult(True, "the carrier is a single rational point")
            return ResidualFinitenessResult(False, "single irrational point: no rational point")
        if affine_dimension([origin, w0, w1, s1]) <= 1:
            return ResidualFinitenessResult(True, "the segment spans a rational line")
        d = next(c.d for c in (*carrier.start, *carrier.end) if isinstance(c, QuadExt))
        found = _lone_rational_point(s, w0, w1, d)
        if found is None or not 0 <= found[0] <= 1:
            witness = "no rational point on the segment"
        elif found[0] in (0, 1):
            witness = "only rational point is an endpoint"
        else:
            witness = f"only rational point is the interior point ({', '.join(map(format_rational, found[1]))})"
        logger.debug(f"Segment {carrier} is not residually finite: {witness}")
        return ResidualFinitenessResult(False, witness)
    raise UnsupportedDescriptorError(f"no residual finiteness test for {type(carrier).__name__}")


# ---------------------------------------------------------------------------
# Z^k: surjective endomorphisms are injective
# ---------------------------------------------------------------------------

def znk_surjective_implies_injective(matrix, max_size: int = MAX_SNF_SIZE) -> dict:
    """Smith normal form report for an integer endomorphism of Z^k."""
    m = Matrix(matrix)
    if m.rows != m.cols:
        raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")
    if m.rows > max_size:
        raise SizeBoundError(f"{m.rows}x{m.rows} exceeds the Smith normal form bound {max_size}")
    snf = smith_normal_form(m, domain=ZZ)
    factors = [abs(int(snf[i, i])) for i in range(m.rows)]
    det = int(m.det())
    surjective = all(f == 1 for f in factors)
    injective = det != 0
    report = {
        "matrix": [[int(v) for v in m.row(i)] for i in range(m.rows)],
        "invariant_factors": factors,
        "determinant": det,
        "surjective": surjective,
        "injective": injective,
        "implication_holds": (not surjective) or (abs(det) == 1 and injective),
    }
    logger.debug(f"Z^{m.rows} report: {report}")
    return report
