import random
from fractions import Fraction

import pytest

from crossed_product.config import STRATEGY_RIGHTMOST
from crossed_product.core import NCPoly, Scalar, star
from crossed_product.cross import TwistMatrix
from crossed_product.errors import DimensionError, PreconditionError
from crossed_product.wick import WickSpec, check_star_cross, check_wick_basis, normal_order

from .conftest import poly, random_mixed_word, xw, yw

HALF = Scalar(Fraction(1, 2))


@pytest.mark.parametrize('q', [Fraction(1, 2), Fraction(-1), Fraction(0), Fraction(3)])
def test_real_q_ccr_is_star_cross(q):
    assert check_star_cross(TwistMatrix.q_cross(2, 2, q))


def test_complex_q_ccr_is_not_star_cross():
    assert not check_star_cross(TwistMatrix.q_cross(1, 1, Scalar.i()))
    with pytest.raises(PreconditionError):
        WickSpec.q_ccr(1, Scalar.i())
    unchecked = WickSpec(1, TwistMatrix.q_cross(1, 1, Scalar.i()), require_star_cross=False)
    assert normal_order(unchecked, NCPoly.from_word(yw(1) * xw(1))) == poly((1, xw()), (Scalar.i(), xw(1) * yw(1)))


def test_star_cross_pairs_conjugate_entries():
    good = TwistMatrix.from_entries(2, 2, {(1, 2, 1, 2): Scalar(1, 1), (2, 1, 2, 1): Scalar(1, -1)})
    bad = TwistMatrix.from_entries(2, 2, {(1, 2, 1, 2): Scalar(1, 1), (2, 1, 2, 1): Scalar(1, 1)})
    assert check_star_cross(good)
    assert not check_star_cross(bad)


def test_car_relations():
    car = WickSpec.car(2)
    assert normal_order(car, NCPoly.from_word(yw(1) * xw(1))) == poly((1, xw()), (-1, xw(1) * yw(1)))
    assert normal_order(car, NCPoly.from_word(yw(1) * xw(2))) == poly((-1, xw(2) * yw(1)))
    assert normal_order(car, NCPoly.from_word(yw(1, 2))) == NCPoly.from_word(yw(1, 2))


def test_q_ccr_normal_order_of_annihilator_past_two_creators():
    spec = WickSpec.q_ccr(1, HALF)
    result = normal_order(spec, NCPoly.from_word(yw(1) * xw(1, 1)))
    assert result == poly((1 + HALF, xw(1)), (HALF * HALF, xw(1, 1) * yw(1)))
    assert result == normal_order(spec, NCPoly.from_word(yw(1) * xw(1, 1)), STRATEGY_RIGHTMOST)


@pytest.mark.parametrize('spec', [WickSpec.car(2), WickSpec.q_ccr(2, HALF), WickSpec.q_ccr(1, 2)])
def test_wick_basis_for_standard_families(spec):
    report = check_wick_basis(spec, 4)
    assert report.passed, report.violations
    assert [c.name for c in report.checks] == ['confluence', 'closure', 'associativity']


def test_wick_basis_for_random_star_cross_twists():
    for seed in range(20):
        spec = WickSpec.random_hermitian(2, random.Random(seed))
        assert check_star_cross(spec.twist)
        report = check_wick_basis(spec, 4)
        assert report.passed, (seed, report.violations)


def test_dimension_mismatch_is_rejected():
    with pytest.raises(DimensionError):
        WickSpec(3, TwistMatrix.switch(2, 2))


def test_star_cross_needs_a_square_twist():
    with pytest.raises(DimensionError):
        check_star_cross(TwistMatrix.switch(1, 2))


@pytest.mark.parametrize('spec', [
    WickSpec.car(2),
    WickSpec.q_ccr(2, HALF),
    WickSpec.random_hermitian(2, random.Random(3)),
], ids=['car', 'q=1/2', 'hermitian'])
def test_normal_order_commutes_with_star(spec, rng):
    for _ in range(40):
        p = poly(*[(Scalar(rng.randint(-2, 2), rng.randint(-2, 2)), random_mixed_word(rng, 2, rng.randint(0, 4)))
                   for _ in range(2)])
        assert normal_order(spec, star(p)) == star(normal_order(spec, p))
