# modules/gammagerms.py
"""The Gamma functor on a few unital l-groups, ideal correspondence, and germ
algebras at 0 in [0,1] and at the origin of the square.

Homogeneous piecewise-linear functions on the first quadrant (HomogPL) carry
the 2-D germs: a fan of primitive integer rays from (1,0) to (0,1) with an
integer linear map on each cone.
"""
from __future__ import annotations

import logging
import math
import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from modules.errors import (
    DimensionError,
    RangeViolationError,
    UnsupportedDescriptorError,
)
from modules.finitemv import (
    ChangElement,
    FiniteMV,
    MVChain,
    chang_window,
)
from modules.mcnaughton import (
    LGroupFunction,
    McNFunction,
    add,
    equal,
    join,
    meet,
    mv_neg,
    mv_plus,
    scalar,
    sub,
    unit_interval_part,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# unital l-group descriptors
# ---------------------------------------------------------------------------

class UnitalLGroup:
    """Interface shared by the supported unital l-groups."""

    name = "l-group"

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def unit(self):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def join(self, x, y):
        raise NotImplementedError

    def meet(self, x, y):
        raise NotImplementedError

    def eq(self, x, y) -> bool:
        return x == y

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def le(self, x, y) -> bool:
        return self.eq(self.meet(x, y), x)

    def abs(self, x):
        return self.join(x, self.neg(x))

    def model(self):
        raise UnsupportedDescriptorError(f"{self.name} has no concrete MV-algebra model")

    def to_model(self, x):
        return x

    def from_model(self, a):
        return a


@dataclass(frozen=True)
class ZWithUnit(UnitalLGroup):
    v: int

    def __post_init__(self):
        if self.v < 1:
            raise ValueError(f"the unit must be a positive integer, got {self.v}")

    @property
    def name(self) -> str:
        return f"(Z,{self.v})"

    zero = property(lambda self: 0)
    unit = property(lambda self: self.v)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def join(self, x, y):
        return max(x, y)

    def meet(self, x, y):
        return min(x, y)

    def model(self) -> MVChain:
        return MVChain(self.v)

    def sample(self, bound: int) -> list:
        return list(range(-bound, bound + 1))


@dataclass(frozen=True)
class ZProductWithUnit(UnitalLGroup):
    """Z^k ordered componentwise, with a strong unit of positive integers."""

    units: tuple

    def __post_init__(self):
        units = tuple(int(u) for u in self.units)
        if not units or any(u < 1 for u in units):
            raise ValueError(f"units must be positive integers, got {self.units}")
        object.__setattr__(self, "units", units)

    @property
    def name(self) -> str:
        return f"(Z^{len(self.units)},{self.units})"

    zero = property(lambda self: (0,) * len(self.units))
    unit = property(lambda self: self.units)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def join(self, x, y):
        return tuple(max(a, b) for a, b in zip(x, y))

    def meet(self, x, y):
        return tuple(min(a, b) for a, b in zip(x, y))

    def model(self) -> FiniteMV:
        return FiniteMV.of(*self.units)

    def sample(self, bound: int) -> list:
        return list(product(range(-bound, bound + 1), repeat=len(self.units)))


@dataclass(frozen=True)
class ZLexZ(UnitalLGroup):
    """Z x Z ordered lexicographically, unit (1, 0)."""

    name = "Z+lexZ"
    zero = property(lambda self: (0, 0))
    unit = property(lambda self: (1, 0))

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def neg(self, x):
        return (-x[0], -x[1])

    def join(self, x, y):
        return max(tuple(x), tuple(y))

    def meet(self, x, y):
        return min(tuple(x), tuple(y))

    def model(self) -> str:
        return "Chang"

    def to_model(self, x) -> ChangElement:
        return ChangElement(*x)

    def from_model(self, a: ChangElement):
        return (a.m, a.k)

    def sample(self, bound: int) -> list:
        return list(product(range(-bound, bound + 1), repeat=2))


@dataclass(frozen=True)
class PLGroup(UnitalLGroup):
    """Integer PL functions on [0,1]^n with the constant 1 as unit."""

    n: int

    @property
    def name(self) -> str:
        return f"(M_{self.n},1)"

    @property
    def zero(self) -> LGroupFunction:
        return LGroupFunction.constant(self.n, 0)

    @property
    def unit(self) -> LGroupFunction:
        return LGroupFunction.constant(self.n, 1)

    def add(self, x, y):
        return add(x, y)

    def sub(self, x, y):
        return sub(x, y)

    def neg(self, x):
        return scalar(x, -1)

    def join(self, x, y):
        return join(x, y)

    def meet(self, x, y):
        return meet(x, y)

    def eq(self, x, y) -> bool:
        return equal(x, y)

    def model(self) -> str:
        return f"McN([0,1]^{self.n})"

    def to_model(self, x: LGroupFunction) -> McNFunction:
        return unit_interval_part(x)

    def from_model(self, a: McNFunction) -> LGroupFunction:
        return a.as_lgroup()


class GammaAlgebra:
    """The unit interval [0, u] of a unital l-group with x (+) y = (x + y) ^ u and ~x = u - x."""

    def __init__(self, group: UnitalLGroup) -> None:
        self.group = group

    def __repr__(self) -> str:
        return f"Gamma{self.group.name}"

    @property
    def model(self):
        return self.group.model()

    @property
    def zero(self):
        return self.group.zero

    @property
    def one(self):
        return self.group.unit

    def contains(self, x) -> bool:
        g = self.group
        return g.le(g.zero, x) and g.le(x, g.unit)

    def oplus(self, x, y):
        g = self.group
        return g.meet(g.add(x, y), g.unit)

    def neg(self, x):
        return self.group.sub(self.group.unit, x)

    def otimes(self, x, y):
        return self.neg(self.oplus(self.neg(x), self.neg(y)))

    def join(self, x, y):
        return self.group.join(x, y)

    def meet(self, x, y):
        return self.group.meet(x, y)

    def to_model(self, x):
        return self.group.to_model(x)

    def from_model(self, a):
        return self.group.from_model(a)


def gamma(group: UnitalLGroup) -> GammaAlgebra:
    if not isinstance(group, UnitalLGroup):
        raise UnsupportedDescriptorError(f"no Gamma for {type(group).__name__}")
    logger.debug(f"Gamma of {group.name}")
    return GammaAlgebra(group)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

CHANG_IDEAL_KINDS = ("zero", "infinitesimal", "all")


@dataclass(frozen=True)
class FiniteIdeal:
    """Ideal of a product of chains: factors flagged True are kept whole, the rest are zero."""

    mask: tuple

    def contains(self, a) -> bool:
        a = (a,) if isinstance(a, int) else tuple(a)
        return all(keep or x == 0 for keep, x in zip(self.mask, a))


@dataclass(frozen=True)
class ChangIdeal:
    kind: str

    def __post_init__(self):
        if self.kind not in CHANG_IDEAL_KINDS:
            raise ValueError(f"unknown Chang ideal {self.kind!r}")

    def contains(self, a: ChangElement) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "infinitesimal":
            return a.m == 0
        return a == ChangElement(0, 0)


@dataclass(frozen=True)
class ProductGroupIdeal:
    mask: tuple

    def contains(self, x) -> bool:
        x = (x,) if isinstance(x, int) else tuple(x)
        return all(keep or v == 0 for keep, v in zip(self.mask, x))


@dataclass(frozen=True)
class LexGroupIdeal:
    kind: str

    def contains(self, x) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "infinitesimal":
            return x[0] == 0
        return tuple(x) == (0, 0)


def _factor_count(group: UnitalLGroup) -> int:
    return 1 if isinstance(group, ZWithUnit) else len(group.units)


def phi(ideal, group: UnitalLGroup):
    """The l-ideal {x : |x| ^ u in ideal} of the group."""
    if isinstance(ideal, FiniteIdeal) and isinstance(group, (ZWithUnit, ZProductWithUnit)):
        if len(ideal.mask) != _factor_count(group):
            raise DimensionError("ideal mask does not match the number of factors")
        return ProductGroupIdeal(ideal.mask)
    if isinstance(ideal, ChangIdeal) and isinstance(group, ZLexZ):
        return LexGroupIdeal(ideal.kind)
    raise UnsupportedDescriptorError(f"no ideal correspondence for {type(ideal).__name__} over {group.name}")


def psi(ideal, group: UnitalLGroup):
    """The MV-ideal ideal ∩ [0, u]."""
    if isinstance(ideal, ProductGroupIdeal) and isinstance(group, (ZWithUnit, ZProductWithUnit)):
        return FiniteIdeal(ideal.mask)
    if isinstance(ideal, LexGroupIdeal) and isinstance(group, ZLexZ):
        return ChangIdeal(ideal.kind)
    raise UnsupportedDescriptorError(f"no ideal correspondence for {type(ideal).__name__} over {group.name}")


ideal_correspondence = phi


def verify_ideal_correspondence(ideal, group: UnitalLGroup, bound: int = 4) -> dict:
    """Check phi against its defining predicate on a window of group elements, and both round trips."""
    image = phi(ideal, group)
    algebra = gamma(group)
    predicate_ok = all(
        image.contains(x) == ideal.contains(group.to_model(group.meet(group.abs(x), group.unit)))
        for x in group.sample(bound)
    )
    truncation_ok = all(
        psi(image, group).contains(group.to_model(x)) == image.contains(x)
        for x in group.sample(bound)
        if algebra.contains(x)
    )
    return {
        "predicate": predicate_ok,
        "truncation": truncation_ok,
        "psi_phi": psi(image, group) == ideal,
        "phi_psi": phi(psi(image, group), group) == image,
    }


# ---------------------------------------------------------------------------
# germs at 0 in [0,1]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Germ1D:
    """Germ at 0 of a McNaughton function: value and right derivative."""

    value: int
    slope: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise RangeViolationError(f"germ value must be 0 or 1, got {self.value}")
        if (self.value == 0 and self.slope < 0) or (self.value == 1 and self.slope > 0):
            raise RangeViolationError(f"germ ({self.value}, {self.slope}) leaves [0,1]")

    def oplus(self, other: Germ1D) -> Germ1D:
        total = self.value + other.value
        slope = self.slope + other.slope
        if total == 0:
            return Germ1D(0, slope)
        if total >= 2 or slope >= 0:
            return Germ1D(1, 0)
        return Germ1D(1, slope)

    def neg(self) -> Germ1D:
        return Germ1D(1 - self.value, -self.slope)


def germ_at_zero_1d(f: McNFunction) -> Germ1D:
    if f.n != 1:
        raise DimensionError("one-dimensional germs need a function of one variable")
    piece = f.pieces[f.domain.locate((0,))]
    return Germ1D(int(piece.offset), int(piece.coeffs[0]))


def chang_to_germ(e: ChangElement) -> Germ1D:
    return Germ1D(e.m, e.k)


def germ_to_chang(g: Germ1D) -> ChangElement:
    return ChangElement(g.value, g.slope)


def chang_representative(e: ChangElement) -> McNFunction:
    """A McNaughton function on [0,1] whose germ at 0 is e: min(1, kx) or its negation."""
    ramp = meet(
        LGroupFunction.coordinate(1, 1) * abs(e.k),
        LGroupFunction.constant(1, 1),
    )
    f = unit_interval_part(ramp)
    return f if e.m == 0 else mv_neg(f)


def chang_iso_check(window: int = 10, functions: bool = True) -> dict:
    """The germ map is a bijective homomorphism from the Chang algebra, on |k| <= window."""
    elements = chang_window(window)
    germs = [chang_to_germ(e) for e in elements]
    oplus_ok = all(
        chang_to_germ(a.oplus(b)) == chang_to_germ(a).oplus(chang_to_germ(b)) for a in elements for b in elements
    )
    neg_ok = all(chang_to_germ(a.neg()) == chang_to_germ(a).neg() for a in elements)
    bijective = len(set(germs)) == len(elements) and all(germ_to_chang(chang_to_germ(a)) == a for a in elements)
    cross_ok = True
    if functions:
        reps = {a: chang_representative(a) for a in elements}
        cross_ok = all(germ_at_zero_1d(reps[a]) == chang_to_germ(a) for a in elements) and all(
            germ_at_zero_1d(mv_plus(reps[a], reps[b])) == chang_to_germ(a.oplus(b))
            for a in elements
            for b in elements
        )
    report = {
        "window": window,
        "elements": len(elements),
        "oplus_preserved": oplus_ok,
        "neg_preserved": neg_ok,
        "bijective": bijective,
        "function_cross_check": cross_ok,
    }
    report["passes"] = oplus_ok and neg_ok and bijective and cross_ok
    logger.info(f"Chang/germ isomorphism check on window {window}: {report['passes']}")
    return report


# ---------------------------------------------------------------------------
# homogeneous PL functions on the first quadrant
# ---------------------------------------------------------------------------

X_RAY = (1, 0)
Y_RAY = (0, 1)


def _primitive(v) -> tuple:
    x, y = Fraction(v[0]), Fraction(v[1])
    scale = math.lcm(x.denominator, y.denominator)
    x, y = int(x * scale), int(y * scale)
    g = math.gcd(x, y)
    if g == 0:
        raise ValueError("the zero vector has no direction")
    return (x // g, y // g)


def _angle_key(ray) -> Fraction:
    return Fraction(ray[1], ray[0] + ray[1])


def _in_quadrant(v) -> bool:
    return v[0] >= 0 and v[1] >= 0 and (v[0] or v[1])


def _dot(piece, v):
    return piece[0] * v[0] + piece[1] * v[1]


class HomogPL:
    """Continuous homogeneous PL function on the first quadrant."""

    __slots__ = ("rays", "pieces")

    def __init__(self, rays, pieces) -> None:
        rays = tuple(_primitive(r) for r in rays)
        pieces = tuple((Fraction(a), Fraction(b)) for a, b in pieces)
        if any(c.denominator != 1 for p in pieces for c in p):
            raise ValueError("HomogPL pieces must have integer coefficients")
        pieces = tuple((int(a), int(b)) for a, b in pieces)
        if not rays or rays[0] != X_RAY or rays[-1] != Y_RAY:
            raise ValueError("the fan must start at (1,0) and end at (0,1)")
        keys = [_angle_key(r) for r in rays]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("rays must be distinct and sorted by angle")
        if len(pieces) != len(rays) - 1:
            raise ValueError(f"{len(pieces)} pieces for {len(rays) - 1} cones")
        for i in range(1, len(pieces)):
            if _dot(pieces[i - 1], rays[i]) != _dot(pieces[i], rays[i]):
                raise ValueError(f"pieces disagree on the ray {rays[i]}")
        self.rays = rays
        self.pieces = pieces

    @classmethod
    def linear(cls, ax: int, ay: int) -> HomogPL:
        return cls((X_RAY, Y_RAY), ((ax, ay),))

    @classmethod
    def zero(cls) -> HomogPL:
        return cls.linear(0, 0)

    def __repr__(self) -> str:
        return f"HomogPL(rays={list(self.rays)}, pieces={list(self.pieces)})"

    def _cone_of(self, direction) -> int:
        key = _angle_key(direction)
        i = bisect_left([_angle_key(r) for r in self.rays], key)
        return max(0, min(i - 1, len(self.pieces) - 1))

    def __call__(self, point):
        x, y = Fraction(point[0]), Fraction(point[1])
        if x < 0 or y < 0:
            raise DimensionError(f"({x}, {y}) lies outside the first quadrant")
        if x == 0 and y == 0:
            return Fraction(0)
        return _dot(self.pieces[self._cone_of((x, y))], (x, y))

    def ray_values(self) -> list:
        return [_dot(self.pieces[min(i, len(self.pieces) - 1)], r) for i, r in enumerate(self.rays)]

    def refine(self, rays) -> HomogPL:
        merged = sorted({*self.rays, *(_primitive(r) for r in rays)}, key=_angle_key)
        pieces = [
            self.pieces[self._cone_of((r[0] + s[0], r[1] + s[1]))] for r, s in zip(merged, merged[1:])
        ]
        return HomogPL(merged, pieces)

    def _align(self, other: HomogPL) -> tuple:
        return self.refine(other.rays), other.refine(self.rays)

    def reduce(self) -> HomogPL:
        """Drop rays across which the piece does not change."""
        rays, pieces = [self.rays[0]], [self.pieces[0]]
        for ray, piece in zip(self.rays[1:-1], self.pieces[1:]):
            if piece == pieces[-1]:
                continue
            rays.append(ray)
            pieces.append(piece)
        rays.append(Y_RAY)
        return HomogPL(rays, pieces)

    def _pointwise(self, other: HomogPL, combine) -> HomogPL:
        a, b = self._align(other)
        return HomogPL(a.rays, [combine(p, q) for p, q in zip(a.pieces, b.pieces)]).reduce()

    def __add__(self, other: HomogPL) -> HomogPL:
        return self._pointwise(other, lambda p, q: (p[0] + q[0], p[1] + q[1]))

    def __sub__(self, other: HomogPL) -> HomogPL:
        return self._pointwise(other, lambda p, q: (p[0] - q[0], p[1] - q[1]))

    def __neg__(self) -> HomogPL:
        return HomogPL(self.rays, [(-a, -b) for a, b in self.pieces])

    def scale(self, k: int) -> HomogPL:
        if k == 0:
            return HomogPL.zero()
        return HomogPL(self.rays, [(k * a, k * b) for a, b in self.pieces])

    def _envelope(self, other: HomogPL, use_max: bool) -> HomogPL:
        a, b = self._align(other)
        crossings = []
        for r, s, p, q in zip(a.rays, a.rays[1:], a.pieces, b.pieces):
            d = (p[0] - q[0], p[1] - q[1])
            vr, vs = _dot(d, r), _dot(d, s)
            if vr * vs < 0:
                sign = 1 if vs > 0 else -1
                crossings.append((sign * (vs * r[0] - vr * s[0]), sign * (vs * r[1] - vr * s[1])))
        if crossings:
            a, b = a.refine(crossings), b.refine(crossings)
        pieces = []
        for r, s, p, q in zip(a.rays, a.rays[1:], a.pieces, b.pieces):
            mid = (r[0] + s[0], r[1] + s[1])
            first = _dot(p, mid) >= _dot(q, mid)
            pieces.append(p if first == use_max else q)
        return HomogPL(a.rays, pieces).reduce()

    def __or__(self, other: HomogPL) -> HomogPL:
        return self._envelope(other, True)

    def __and__(self, other: HomogPL) -> HomogPL:
        return self._envelope(other, False)

    def _canonical(self) -> tuple:
        reduced = self.reduce()
        return reduced.rays, reduced.pieces

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogPL):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.ray_values())

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.ray_values())

    def compose_linear(self, matrix) -> HomogPL:
        """self o M for an integer 2x2 matrix with M(Q) inside Q."""
        (m00, m01), (m10, m11) = (tuple(int(v) for v in row) for row in matrix)
        if min(m00, m01, m10, m11) < 0:
            raise RangeViolationError("the matrix must map the first quadrant into itself")
        rays = {X_RAY, Y_RAY}
        for r in self.rays[1:-1]:
            # preimage of the ray under M is spanned by adj(M) r
            pre = (m11 * r[0] - m01 * r[1], -m10 * r[0] + m00 * r[1])
            if _in_quadrant(pre):
                rays.add(_primitive(pre))
        rays = sorted(rays, key=_angle_key)
        pieces = []
        for r, s in zip(rays, rays[1:]):
            mid = (r[0] + s[0], r[1] + s[1])
            image = (m00 * mid[0] + m01 * mid[1], m10 * mid[0] + m11 * mid[1])
            a = self.pieces[self._cone_of(image)] if any(image) else (0, 0)
            pieces.append((a[0] * m00 + a[1] * m10, a[0] * m01 + a[1] * m11))
        return HomogPL(rays, pieces).reduce()

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "pieces": [{"ax": a, "ay": b} for a, b in self.pieces],
        }

    @classmethod
    def from_json(cls, data: dict) -> HomogPL:
        return cls([tuple(r) for r in data["rays"]], [(p["ax"], p["ay"]) for p in data["pieces"]])


# ---------------------------------------------------------------------------
# germs at the origin of the square
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Germ2D:
    """Value 0 stands for the germ p, value 1 for the germ 1 - p; p >= 0 on the quadrant.

    Each ray d of the quadrant determines a prime ideal, the germs whose profile
    vanishes along d. Those primes are not materialized here.
    """

    value: int
    profile: HomogPL

    def __post_init__(self):
        if self.value not in (0, 1):
            raise RangeViolationError(f"germ value must be 0 or 1, got {self.value}")
        if not self.profile.is_nonnegative():
            raise RangeViolationError("a germ profile must be nonnegative on the quadrant")

    def neg(self) -> Germ2D:
        return Germ2D(1 - self.value, self.profile)

    def oplus(self, other: Germ2D) -> Germ2D:
        if self.value == 0 and other.value == 0:
            return Germ2D(0, self.profile + other.profile)
        if self.value == 1 and other.value == 1:
            return GERM2D_ONE
        low, high = (self, other) if self.value == 0 else (other, self)
        return Germ2D(1, (high.profile - low.profile) | HomogPL.zero())

    def otimes(self, other: Germ2D) -> Germ2D:
        return self.neg().oplus(other.neg()).neg()

    def join(self, other: Germ2D) -> Germ2D:
        if self.value != other.value:
            return self if self.value == 1 else other
        if self.value == 0:
            return Germ2D(0, self.profile | other.profile)
        return Germ2D(1, self.profile & other.profile)

    def meet(self, other: Germ2D) -> Germ2D:
        return self.neg().join(other.neg()).neg()

    def to_json(self) -> dict:
        return {"value": self.value, "profile": self.profile.to_json()}


GERM2D_ZERO = Germ2D(0, HomogPL.zero())
GERM2D_ONE = Germ2D(1, HomogPL.zero())


def germ_at_origin_2d(f: McNFunction) -> Germ2D:
    """Value at the origin and directional derivatives there, as a fan on the quadrant.

    The origin is a corner of the carrier, so it is a vertex of every
    triangulation of the square and its star is already cone-like.
    """
    if f.n != 2:
        raise DimensionError("origin germs need a function of two variables")
    origin = (Fraction(0), Fraction(0))
    cones = []
    for simplex, piece in f.cells():
        if origin not in simplex.vertices:
            continue
        u, v = sorted((_primitive(w) for w in simplex.vertices if w != origin), key=_angle_key)
        cones.append((u, v, piece))
    value = int(cones[0][2].offset)
    rays = sorted({r for u, v, _ in cones for r in (u, v)}, key=_angle_key)
    pieces = []
    for r, s in zip(rays, rays[1:]):
        key = _angle_key((r[0] + s[0], r[1] + s[1]))
        piece = next(p for u, v, p in cones if _angle_key(u) <= key <= _angle_key(v))
        a = (int(piece.coeffs[0]), int(piece.coeffs[1]))
        pieces.append(a if value == 0 else (-a[0], -a[1]))
    return Germ2D(value, HomogPL(rays, pieces).reduce())


# ---------------------------------------------------------------------------
# Z +lex H and the quadrant endomorphism
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LexElement:
    """m + h with m an integer level and h a homogeneous PL function on the quadrant."""

    m: int
    h: HomogPL

    def __add__(self, other: LexElement) -> LexElement:
        return LexElement(self.m + other.m, self.h + other.h)

    def __sub__(self, other: LexElement) -> LexElement:
        return LexElement(self.m - other.m, self.h - other.h)

    def __neg__(self) -> LexElement:
        return LexElement(-self.m, -self.h)

    def __or__(self, other: LexElement) -> LexElement:
        if self.m != other.m:
            return self if self.m > other.m else other
        return LexElement(self.m, self.h | other.h)

    def __and__(self, other: LexElement) -> LexElement:
        if self.m != other.m:
            return self if self.m < other.m else other
        return LexElement(self.m, self.h & other.h)

    def is_nonnegative(self) -> bool:
        return self.m > 0 or (self.m == 0 and self.h.is_nonnegative())


class QuadrantLex(UnitalLGroup):
    """Z +lex H with unit (1, 0)."""

    name = "Z+lexH"

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadrantLex)

    def __hash__(self) -> int:
        return hash(self.name)

    @property
    def zero(self) -> LexElement:
        return LexElement(0, HomogPL.zero())

    @property
    def unit(self) -> LexElement:
        return LexElement(1, HomogPL.zero())

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def join(self, x, y):
        return x | y

    def meet(self, x, y):
        return x & y

    def model(self) -> str:
        return "C∐C"

    def to_model(self, x: LexElement) -> Germ2D:
        if x.m == 0:
            return Germ2D(0, x.h)
        if x.m == 1:
            return Germ2D(1, -x.h)
        raise RangeViolationError(f"level {x.m} lies outside [0, u]")

    def from_model(self, a: Germ2D) -> LexElement:
        return LexElement(0, a.profile) if a.value == 0 else LexElement(1, -a.profile)


QUADRANT_SHEAR = ((1, 0), (1, 1))


def quadrant_sigma(element: LexElement) -> LexElement:
    """(m, h) -> (m, h o q) with q(x, y) = (x, x + y)."""
    return LexElement(element.m, element.h.compose_linear(QUADRANT_SHEAR))


def quadrant_ideal_member(element: LexElement) -> bool:
    """Whether a positive element vanishes on the quadrant."""
    if element.m != 0 or not element.h.is_nonnegative():
        raise RangeViolationError("membership is tested for elements with m = 0 and h >= 0")
    return element.h.is_zero()


# ---------------------------------------------------------------------------
# homogeneous PL functions on the whole plane
# ---------------------------------------------------------------------------

QUADRANTS = ((1, 1), (-1, 1), (-1, -1), (1, -1))


class FourQuadrantPL:
    """Homogeneous PL function on R^2 as four charts f(x, y) = chart[(sx, sy)](sx*x, sy*y)."""

    def __init__(self, charts: dict) -> None:
        if set(charts) != set(QUADRANTS):
            raise ValueError("one chart per quadrant is required")
        for (sx, sy), chart in charts.items():
            if chart((1, 0)) != charts[(sx, -sy)]((1, 0)) or chart((0, 1)) != charts[(-sx, sy)]((0, 1)):
                raise ValueError(f"charts disagree on an axis bounding quadrant {(sx, sy)}")
        self.charts = dict(charts)

    @classmethod
    def linear(cls, ax: int, ay: int) -> FourQuadrantPL:
        return cls({(sx, sy): HomogPL.linear(sx * ax, sy * ay) for sx, sy in QUADRANTS})

    @classmethod
    def zero(cls) -> FourQuadrantPL:
        return cls.linear(0, 0)

    def __call__(self, point):
        x, y = Fraction(point[0]), Fraction(point[1])
        sx, sy = (1 if x >= 0 else -1), (1 if y >= 0 else -1)
        return self.charts[(sx, sy)]((sx * x, sy * y))

    def _chartwise(self, other: FourQuadrantPL, combine) -> FourQuadrantPL:
        return FourQuadrantPL({s: combine(self.charts[s], other.charts[s]) for s in QUADRANTS})

    def __add__(self, other):
        return self._chartwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._chartwise(other, lambda a, b: a - b)

    def __neg__(self):
        return FourQuadrantPL({s: -c for s, c in self.charts.items()})

    def __or__(self, other):
        return self._chartwise(other, lambda a, b: a | b)

    def __and__(self, other):
        return self._chartwise(other, lambda a, b: a & b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourQuadrantPL):
            return NotImplemented
        return all(self.charts[s] == other.charts[s] for s in QUADRANTS)

    def scale(self, k: int) -> FourQuadrantPL:
        return FourQuadrantPL({s: c.scale(k) for s, c in self.charts.items()})

    def abs(self) -> FourQuadrantPL:
        return self | -self

    def is_nonnegative(self) -> bool:
        return all(c.is_nonnegative() for c in self.charts.values())

    def restrict_to_quadrant(self) -> HomogPL:
        return self.charts[(1, 1)]


def q_hat() -> FourQuadrantPL:
    """0 v -x v -y: zero exactly on the closed first quadrant."""
    return FourQuadrantPL.zero() | FourQuadrantPL.linear(-1, 0) | FourQuadrantPL.linear(0, -1)


def principal_ideal_multiplier(element: FourQuadrantPL, generator: FourQuadrantPL):
    """Least m >= 0 with |element| <= m|generator|, or None when no multiple dominates."""
    target, bound = element.abs(), generator.abs()
    m = 0
    for s in QUADRANTS:
        a, b = target.charts[s]._align(bound.charts[s])
        for va, vb in zip(a.ray_values(), b.ray_values()):
            if vb == 0:
                if va != 0:
                    return None
                continue
            m = max(m, -(-va // vb))
    return m


def ambient_ideal_member(element: FourQuadrantPL) -> bool:
    """Membership in the ideal generated by q_hat, the functions vanishing on the quadrant."""
    return principal_ideal_multiplier(element, q_hat()) is not None


def quadrant_lex_sample(levels=(0, 1)) -> list:
    """A few hand-picked elements of Z +lex H: coordinates, the kernel element and a meet."""
    functions = [
        HomogPL.zero(),
        HomogPL.linear(1, 0),
        HomogPL.linear(0, 1),
        HomogPL.linear(1, -1) | HomogPL.zero(),
        HomogPL.linear(-1, 1) | HomogPL.zero(),
        HomogPL.linear(2, -1) & HomogPL.linear(-1, 3),
    ]
    return [LexElement(m, h) for m in levels for h in functions]


def random_homog_pl(rng: random.Random, depth: int = 3, bound: int = 3) -> HomogPL:
    """A random element of H built from integer linear maps with +, -, join and meet."""
    if depth <= 0 or rng.random() < 0.3:
        return HomogPL.linear(rng.randint(-bound, bound), rng.randint(-bound, bound))
    left = random_homog_pl(rng, depth - 1, bound)
    right = random_homog_pl(rng, depth - 1, bound)
    op = rng.choice(("+", "-", "v", "^"))
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    return left | right if op == "v" else left & right


def random_lex_elements(count: int, seed: int = 0, levels=(-1, 0, 1, 2)) -> list:
    rng = random.Random(seed)
    return [LexElement(rng.choice(levels), random_homog_pl(rng)) for _ in range(count)]


def sigma_homomorphism_report(count: int = 100, seed: int = 0, sample=None) -> dict:
    """Check that the shear preserves +, -, join, meet and the unit.

    Without an explicit sample: every pair of the hand-picked elements, and
    `count` random elements each paired with its successor and with its
    negative.
    """
    if sample is None:
        fixed = quadrant_lex_sample()
        randoms = random_lex_elements(count, seed)
        pairs = [(a, b) for a in fixed for b in fixed]
        pairs += list(zip(randoms, randoms[1:] + randoms[:1]))
        pairs += [(a, -a) for a in randoms]
        elements = len(fixed) + len(randoms)
    else:
        pairs = [(a, b) for a in sample for b in sample]
        elements = len(sample)
    group = QuadrantLex()
    sigma = quadrant_sigma
    failures = [
        (op, a, b)
        for a, b in pairs
        for op, combine in (
            ("add", lambda s, t: s + t),
            ("sub", lambda s, t: s - t),
            ("join", lambda s, t: s | t),
            ("meet", lambda s, t: s & t),
        )
        if sigma(combine(a, b)) != combine(sigma(a), sigma(b))
    ]
    for op, a, b in failures[:5]:
        logger.warning(f"shear fails to preserve {op} on {a} and {b}")
    checks = {
        "elements": elements,
        "pairs": len(pairs),
        "failures": len(failures),
        "add": not any(op == "add" for op, _, _ in failures),
        "sub": not any(op == "sub" for op, _, _ in failures),
        "join": not any(op == "join" for op, _, _ in failures),
        "meet": not any(op == "meet" for op, _, _ in failures),
        "unit": sigma(group.unit) == group.unit,
    }
    checks["passes"] = all(v for v in checks.values() if isinstance(v, bool))
    return checks


def quadrant_nonhopfian_certificate() -> dict:
    """Surjectivity witnesses and a kernel element for the shear endomorphism."""
    x, y = HomogPL.linear(1, 0), HomogPL.linear(0, 1)
    kernel = HomogPL.linear(1, -1) | HomogPL.zero()
    y_preimage = HomogPL.linear(-1, 1) | HomogPL.zero()
    certificate = {
        "x_preimage": x.to_json(),
        "sigma_x_is_x": quadrant_sigma(LexElement(0, x)) == LexElement(0, x),
        "y_preimage": y_preimage.to_json(),
        "sigma_y_preimage_is_y": quadrant_sigma(LexElement(0, y_preimage)) == LexElement(0, y),
        "kernel_element": kernel.to_json(),
        "kernel_element_nonzero": not kernel.is_zero(),
        "sigma_kernel_is_zero": quadrant_sigma(LexElement(0, kernel)).h.is_zero(),
        "homomorphism": sigma_homomorphism_report()["passes"],
    }
    certificate["passes"] = all(v for k, v in certificate.items() if isinstance(v, bool))
    logger.info(f"Quadrant non-hopfian certificate passes: {certificate['passes']}")
    return certificate
