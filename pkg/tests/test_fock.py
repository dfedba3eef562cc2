import math
import random
from fractions import Fraction

import pytest

from crossed_product.core import ALPHABET_A, NCPoly, Scalar, star, words
from crossed_product.cross import TwistMatrix
from crossed_product.errors import AlphabetError, PreconditionError
from crossed_product.fock import (
    FockVector,
    GramMatrix,
    apply_annihilation,
    apply_creation,
    check_adjointness,
    check_commutation_relations,
    check_hermitian_representation,
    check_psd,
    fock_report,
    gram_matrix,
    inner_product,
    inner_product_via_normal_order,
    represent,
)
from crossed_product.wick import WickSpec, normal_order

from .conftest import poly, xw, yw


def q_factorial(q, n):
    result = Fraction(1)
    for k in range(1, n + 1):
        result *= sum(q ** j for j in range(k))
    return result


def test_vacuum_is_normalized_and_annihilated(car2):
    vacuum = FockVector.vacuum()
    assert inner_product(car2, vacuum, vacuum) == 1
    assert apply_annihilation(car2, 1, vacuum).is_zero()


def test_fock_vectors_only_hold_creation_words():
    with pytest.raises(AlphabetError):
        FockVector.from_word(yw(1))


@pytest.mark.parametrize('q', [Fraction(1, 2), Fraction(-1, 3), Fraction(2)])
def test_one_generator_gram_is_q_factorial(q):
    spec = WickSpec.q_ccr(1, q)
    for n in range(5):
        gram = gram_matrix(spec, n)
        assert gram.rows() == [[str(q_factorial(q, n))]]


def test_car_degree_two_gram(car2):
    gram = gram_matrix(car2, 2)
    assert gram.basis == (xw(1, 1), xw(1, 2), xw(2, 1), xw(2, 2))
    assert gram.rows() == [
        ['0', '0', '0', '0'],
        ['0', '1', '-1', '0'],
        ['0', '-1', '1', '0'],
        ['0', '0', '0', '0'],
    ]
    result = check_psd(gram)
    assert result.psd and result.kernel_dim == 3 and result.rank == 1


@pytest.mark.parametrize('q', [Fraction(1, 2), Fraction(-1, 2), Fraction(0)])
def test_q_ccr_is_positive_definite_inside_the_unit_interval(q):
    spec = WickSpec.q_ccr(2, q)
    for n in range(5):
        result = check_psd(gram_matrix(spec, n))
        assert result.psd and result.kernel_dim == 0


def test_negative_norm_witness():
    spec = WickSpec.q_ccr(1, -2)
    result = check_psd(gram_matrix(spec, 2))
    assert not result.psd
    assert result.witness == FockVector.from_word(xw(1, 1))
    assert result.witness_norm == -1
    assert inner_product(spec, result.witness, result.witness) == -1


def test_zero_diagonal_witness_has_negative_norm():
    gram = GramMatrix(1, (xw(1), xw(2)), ((Scalar(0), Scalar(1, 1)), (Scalar(1, -1), Scalar(0))))
    result = check_psd(gram)
    assert not result.psd
    assert result.witness_norm == -4


def test_non_hermitian_gram_is_rejected():
    gram = GramMatrix(1, (xw(1), xw(2)), ((Scalar(1), Scalar(1)), (Scalar(0), Scalar(1))))
    with pytest.raises(PreconditionError):
        check_psd(gram)


def test_creation_and_annihilation(car2):
    v = FockVector.from_word(xw(2))
    assert apply_creation(car2, 1, v) == FockVector.from_word(xw(1, 2))
    # a_1 x2 x1 = -x2 a_1 x1 = -x2
    assert apply_annihilation(car2, 1, FockVector.from_word(xw(2, 1))) == poly((-1, xw(2)))


def test_inner_product_matches_normal_ordering(rng):
    spec = WickSpec.random_hermitian(2, rng)
    report = fock_report(spec, 3)
    assert report.check('inner_product_oracle').passed
    assert inner_product_via_normal_order(spec, xw(1, 2), xw(2, 1)) == \
        inner_product(spec, FockVector.from_word(xw(1, 2)), FockVector.from_word(xw(2, 1)))


def test_adjointness_and_commutation_hold(car2):
    assert check_adjointness(car2, 3).passed
    assert check_commutation_relations(car2, 3).passed
    assert check_adjointness(WickSpec.q_ccr(2, Fraction(1, 3)), 3).passed


def test_adjointness_catches_a_mutated_annihilator(car2):
    mutated = WickSpec(2, TwistMatrix.from_entries(2, 2, {
        (1, 1, 1, 1): -1,
        (1, 2, 2, 1): -2,
        (2, 1, 1, 2): -1,
        (2, 2, 2, 2): -1,
    }), require_star_cross=False)

    def annihilation(spec, i, v):
        return apply_annihilation(mutated, i, v)

    result = check_adjointness(car2, 2, annihilation=annihilation)
    assert not result.passed
    assert result.witnesses == [{'i': 1, 'u': 'x2', 'v': 'x2 x1', 'lhs': '-1', 'rhs': '-2'}]


def test_representation_is_hermitian(car2):
    assert check_hermitian_representation(car2, 2).passed


def test_represent_acts_right_to_left(car2):
    # x*1 x1 |0> = |0>
    p = NCPoly.from_word(yw(1) * xw(1))
    assert represent(car2, p, FockVector.vacuum()) == FockVector.vacuum()


def test_bosonic_gram_is_n_factorial():
    spec = WickSpec.q_ccr(1, 1)
    assert [gram_matrix(spec, n).rows() for n in range(7)] == \
        [[[str(v)]] for v in (1, 1, 2, 6, 24, 120, 720)]
    assert all(gram_matrix(spec, n).entries[0][0] == math.factorial(n) for n in range(7))


def test_negative_half_gram_values():
    spec = WickSpec.q_ccr(1, Fraction(-1, 2))
    # [n]_q! at q = -1/2
    assert [gram_matrix(spec, n).rows()[0][0] for n in range(5)] == ['1', '1', '1/2', '3/8', '15/64']


@pytest.mark.parametrize('spec', [
    WickSpec.q_ccr(2, Fraction(1, 2)),
    WickSpec.q_ccr(2, Fraction(-1, 2)),
    WickSpec.car(2),
], ids=['q=1/2', 'q=-1/2', 'car'])
def test_fock_inner_product_agrees_with_normal_ordering(spec):
    report = fock_report(spec, 3)
    assert report.check('inner_product_oracle').passed
    assert report.check('inner_product_oracle').checked == 1 + 4 + 16 + 64
    assert report.check('adjointness').passed


@pytest.mark.parametrize('spec', [WickSpec.car(2), WickSpec.q_ccr(2, Fraction(1, 2))], ids=['car', 'q=1/2'])
def test_adjointness_up_to_degree_four(spec):
    result = check_adjointness(spec, 4)
    assert result.passed, result.witnesses
    # sum over 1 <= n <= 4 of 2 * 2^(n-1) * 2^n
    assert result.checked == 340


def test_different_degrees_are_orthogonal():
    spec = WickSpec.random_hermitian(2, random.Random(5))
    for m in range(4):
        for n in range(4):
            if m == n:
                continue
            for u in words(ALPHABET_A, 2, m):
                for v in words(ALPHABET_A, 2, n):
                    product = star(NCPoly.from_word(u)) * NCPoly.from_word(v)
                    assert normal_order(spec, product).constant_term() == 0
                    assert inner_product(spec, FockVector.from_word(u), FockVector.from_word(v)) == 0


def test_car_words_with_a_repeated_letter_are_null(car2):
    for n in range(2, 5):
        for w in words(ALPHABET_A, 2, n):
            if any(w[i] == w[i + 1] for i in range(n - 1)):
                assert inner_product(car2, FockVector.from_word(w), FockVector.from_word(w)) == 0
                assert inner_product_via_normal_order(car2, w, w) == 0


@pytest.mark.parametrize('seed', range(3))
def test_gram_matrix_is_hermitian(seed):
    spec = WickSpec.random_hermitian(2, random.Random(seed))
    for n in range(6):
        gram = gram_matrix(spec, n)
        for r in range(gram.size):
            for c in range(gram.size):
                assert gram.entries[r][c] == gram.entries[c][r].conj()
