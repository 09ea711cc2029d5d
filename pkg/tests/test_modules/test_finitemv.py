"""Tests for finite MV-algebras, the Chang algebra and separation."""

import random
from fractions import Fraction as F

import pytest

from modules.errors import (
    DimensionError,
    RangeViolationError,
    SizeBoundError,
    UnsupportedDescriptorError,
    ZeroFunctionError,
)
from modules.exactnum import QuadExt
from modules.finitemv import (
    CHANG_ONE,
    ChangElement,
    FiniteHom,
    FiniteMV,
    MVChain,
    QuadSegment,
    RationalComplex,
    chang_window,
    enumerate_endomorphisms,
    evaluation_chain_report,
    evaluation_hom,
    hopficity_report,
    is_hopfian_finite,
    is_residually_finite,
    product_chains_up_to,
    separate,
    znk_surjective_implies_injective,
)
from modules.mcnaughton import LGroupFunction, McNFunction, from_term, hat_function, join, unit_interval_part
from modules.plgeom import AffineFunctional, triangulate_cube
from modules.terms import parse_term, random_term


def test_chain_operations():
    """Test truncated addition and negation on finite chains."""
    assert MVChain(2).oplus(1, 1) == 2
    assert MVChain(3).neg(1) == 2
    assert MVChain(5).oplus(2, 2) == 4
    assert MVChain(5).otimes(2, 4) == 1
    assert MVChain(4).value(2) == F(1, 2)
    assert MVChain(3).name == "Ł4"
    with pytest.raises(RangeViolationError):
        MVChain(2).oplus(3, 0)
    with pytest.raises(ValueError):
        MVChain(0)


def test_product_algebra():
    """Test componentwise operations on a product of chains."""
    algebra = FiniteMV.of(1, 2)
    assert algebra.name == "Ł2×Ł3"
    assert algebra.size == 6
    assert algebra.oplus((1, 1), (0, 2)) == (1, 2)
    assert algebra.neg((0, 1)) == (1, 1)
    assert algebra.one == (1, 2)
    with pytest.raises(RangeViolationError):
        algebra.oplus((1,), (0, 1))


def test_endomorphisms_of_small_algebras():
    """Test exhaustive endomorphism counts."""
    boolean = FiniteMV.of(1)
    assert len(enumerate_endomorphisms(boolean)) == 1

    three = FiniteMV.of(2)
    endos = enumerate_endomorphisms(three)
    assert len(endos) == 1
    assert all(endos[0](x) == x for x in three.elements())

    square = FiniteMV.of(1, 1)
    endos = enumerate_endomorphisms(square)
    assert len(endos) == 4
    swap = {(0, 0): (0, 0), (1, 0): (0, 1), (0, 1): (1, 0), (1, 1): (1, 1)}
    assert any(h.table == swap for h in endos)
    assert is_hopfian_finite(square)


def test_enumerated_maps_are_homomorphisms():
    """Test that every enumerated map passes the table check."""
    algebra = FiniteMV.of(1, 3)
    for h in enumerate_endomorphisms(algebra):
        FiniteHom(algebra, algebra, h.table)


def test_finite_hom_rejects_non_homomorphisms():
    """Test the table verification."""
    chain = FiniteMV.of(2)
    with pytest.raises(ValueError):
        FiniteHom(chain, chain, {(0,): (0,), (1,): (0,), (2,): (2,)})


def test_size_bound():
    """Test the finite algebra size bound."""
    with pytest.raises(SizeBoundError):
        enumerate_endomorphisms(FiniteMV.of(7, 7), max_size=36)


def test_hopficity_report():
    """Test the report format."""
    report = hopficity_report(FiniteMV.of(1, 2))
    assert set(report) == {"algebra", "endo_count", "surjective_count", "hopfian"}
    assert report["algebra"] == "Ł2×Ł3"
    assert report["hopfian"]
    assert report["surjective_count"] >= 1


@pytest.mark.slow
def test_products_up_to_36_are_hopfian():
    """Test every product of chains with at most 36 elements."""
    algebras = product_chains_up_to(36)
    assert all(a.size <= 36 for a in algebras)
    assert len({a.name for a in algebras}) == len(algebras)
    assert all(is_hopfian_finite(a) for a in algebras)


def test_product_chains_enumeration():
    """Test the product enumeration on a small bound."""
    names = sorted(a.name for a in product_chains_up_to(4))
    assert names == sorted(["Ł4", "Ł3", "Ł2", "Ł2×Ł2"])


def test_chang_operations():
    """Test addition, negation and truncation in the Chang algebra."""
    assert ChangElement(0, 2).oplus(ChangElement(0, 3)) == ChangElement(0, 5)
    assert ChangElement(0, 1).oplus(ChangElement(1, -1)) == CHANG_ONE
    assert ChangElement(1, -1).oplus(ChangElement(1, -1)) == CHANG_ONE
    assert ChangElement(0, 2).oplus(ChangElement(1, -5)) == ChangElement(1, -3)
    assert ChangElement(0, 3).neg() == ChangElement(1, -3)
    assert ChangElement(0, 2) < ChangElement(0, 3) < ChangElement(1, -7)
    assert str(ChangElement(1, -2)) == "1−2ε"
    assert str(ChangElement(0, 1)) == "ε"
    with pytest.raises(RangeViolationError):
        ChangElement(0, -1)
    with pytest.raises(RangeViolationError):
        ChangElement(2, 0)


def test_chang_window():
    """Test the finite window of Chang elements."""
    window = chang_window(2)
    assert len(window) == 6
    assert ChangElement(1, -2) in window


def test_evaluation_hom():
    """Test evaluation into the chain of the point's denominator."""
    double = from_term(parse_term("x1 (+) x1", 1), 1)
    h = evaluation_hom((F(1, 3),))
    assert h(double) == 2
    assert evaluation_hom((F(3, 4),))(double) == 4


def test_separate_examples():
    """Test separation witnesses."""
    ramp = unit_interval_part(join(
        LGroupFunction.from_functional(1, AffineFunctional((2,), -1)),
        LGroupFunction.constant(1, 0),
    ))
    separation = separate(ramp)
    assert separation.point == (F(1),)
    assert separation.d == 1
    assert separation.image == 1

    one = separate(McNFunction.constant(1, 1))
    assert one.d == 1
    assert one.image == 1

    hat = hat_function(1, [AffineFunctional((1,), F(-1, 3)), AffineFunctional((-1,), F(2, 3))])
    separation = separate(hat)
    assert separation.point == (F(1, 2),)
    assert separation.d == 2
    assert separation.image == 1
    assert separation.to_json() == {"point": ["1/2"], "d": 2, "image": 1, "image_value": "1/2"}


def test_separate_zero_function():
    """Test that the zero function cannot be separated."""
    with pytest.raises(ZeroFunctionError):
        separate(McNFunction.constant(2, 0))


@pytest.mark.slow
def test_separate_random_functions():
    """Test separation on random nonzero term functions."""
    rng = random.Random(11)
    checked = 0
    while checked < 40:
        n = 1 + checked % 2
        f = from_term(random_term(rng, n, 3), n)
        if f.is_zero():
            continue
        separation = separate(f)
        value = f.eval_at(separation.point)
        assert value > 0
        assert (value * separation.d).denominator == 1
        assert 1 <= separation.image <= separation.d
        assert separation.apply(f) == separation.image
        checked += 1


def test_evaluation_chain_report():
    """Test the evaluation suite on a few seeded trials."""
    report = evaluation_chain_report(trials=12, seed=3)
    assert report["passes"], report["failures"]
    assert report["max_den"] == 12


@pytest.mark.slow
def test_evaluation_chain_report_full_run():
    """Test the evaluation suite on 500 seeded term and point pairs."""
    report = evaluation_chain_report(trials=500, seed=3, max_den=12)
    assert report["passes"], report["failures"]
    assert report["trials"] == 500


def test_residual_finiteness():
    """Test residual finiteness of rational and quadratic carriers."""
    assert is_residually_finite(RationalComplex(triangulate_cube(1))).value

    origin = (QuadExt(0, 0, 5), QuadExt(0, 0, 5))
    w = (QuadExt(F(1, 2), 0, 5), QuadExt(F(-1, 4), F(1, 4), 5))
    eigen = is_residually_finite(QuadSegment(origin, w))
    assert not eigen.value
    assert eigen.witness == "only rational point is an endpoint"

    r2 = QuadExt(0, F(1, 8), 2)
    through_quarter = QuadSegment((F(1, 8), F(1, 4) - r2), (F(3, 8), F(1, 4) + r2))
    interior = is_residually_finite(through_quarter)
    assert not interior.value
    assert interior.witness == "only rational point is the interior point (1/4, 1/4)"

    beyond_quarter = QuadSegment((F(3, 8), F(1, 4) + r2), (F(1, 2), F(1, 4) + r2 + r2))
    missed = is_residually_finite(beyond_quarter)
    assert not missed.value
    assert missed.witness == "no rational point on the segment"

    point = is_residually_finite(QuadSegment((F(1, 3),), (F(1, 3),)))
    assert point.value

    rational_line = is_residually_finite(QuadSegment((F(0), F(0)), (F(1, 2), F(1, 4))))
    assert rational_line.value


def test_residual_finiteness_errors():
    """Test unsupported and malformed carriers."""
    with pytest.raises(UnsupportedDescriptorError):
        is_residually_finite("a circle")
    with pytest.raises(DimensionError):
        is_residually_finite(QuadSegment((F(0),), (F(0), F(1))))


def test_znk_reports():
    """Test Smith normal form reports."""
    report = znk_surjective_implies_injective([[2, 1], [1, 1]])
    assert report["invariant_factors"] == [1, 1]
    assert report["surjective"] and report["injective"]
    assert report["implication_holds"]

    doubling = znk_surjective_implies_injective([[2, 0], [0, 1]])
    assert doubling["invariant_factors"] == [1, 2]
    assert not doubling["surjective"]
    assert doubling["injective"]
    assert doubling["implication_holds"]

    singular = znk_surjective_implies_injective([[1, 2], [2, 4]])
    assert singular["determinant"] == 0
    assert not singular["injective"]


def test_znk_errors():
    """Test the shape and size checks."""
    with pytest.raises(DimensionError):
        znk_surjective_implies_injective([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(SizeBoundError):
        znk_surjective_implies_injective([[1, 0], [0, 1]], max_size=1)


@pytest.mark.slow
def test_znk_random_matrices():
    """Test surjective implies injective on random integer matrices."""
    rng = random.Random(5)
    for _ in range(100):
        k = rng.randint(1, 4)
        matrix = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
        assert znk_surjective_implies_injective(matrix)["implication_holds"]
