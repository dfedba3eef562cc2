from fractions import Fraction

import pytest

from crossed_product.core import (
    ALPHABET_A,
    ALPHABET_B,
    EMPTY,
    Letter,
    NCPoly,
    Scalar,
    Word,
    mixed_words,
    ordered_words,
    poly_mul_free,
    star,
    word_mul,
    words,
)
from crossed_product.errors import AlphabetError, DimensionError, SpecError

from .conftest import poly, random_mixed_word, xw, yw


@pytest.mark.parametrize('text,expected', [
    ('1/2', Scalar(Fraction(1, 2))),
    ('-3', Scalar(-3)),
    ('1/2+3/4 i', Scalar(Fraction(1, 2), Fraction(3, 4))),
    ('1/2-3/4i', Scalar(Fraction(1, 2), Fraction(-3, 4))),
    ('i', Scalar(0, 1)),
    ('-i', Scalar(0, -1)),
    ('2/3 i', Scalar(0, Fraction(2, 3))),
])
def test_scalar_parse(text, expected):
    assert Scalar.parse(text) == expected


@pytest.mark.parametrize('value', ['1/2', '-i', '1/2+3/4 i', '-5/7-i', '0'])
def test_scalar_str_reparses(value):
    scalar = Scalar.parse(value)
    assert Scalar.parse(str(scalar)) == scalar


def test_decimal_literal_is_rejected_with_rational_hint():
    with pytest.raises(SpecError) as excinfo:
        Scalar.parse('0.5')
    assert '1/2' in str(excinfo.value)


@pytest.mark.parametrize('text', ['', '1/0', 'q', '1//2', 'i i', '1.2.3', '.', '1.2.3i', '-.'])
def test_malformed_literals(text):
    with pytest.raises(SpecError):
        Scalar.parse(text)


def test_scalar_arithmetic():
    i = Scalar.i()
    assert i * i == -1
    assert (Scalar(1, 1) * Scalar(1, -1)) == 2
    assert Scalar(3, 4).inverse() == Scalar(Fraction(3, 25), Fraction(-4, 25))
    assert Scalar(Fraction(1, 2)) ** -2 == 4
    assert 1 - Scalar(0, 2) == Scalar(1, -2)
    assert Scalar(2) == 2 and hash(Scalar(2)) == hash(2)
    assert Scalar(0, 1).conj() == Scalar(0, -1)


def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        Scalar.of(0.5)


def test_letter_validation():
    with pytest.raises(DimensionError):
        Letter(ALPHABET_A, 0)
    with pytest.raises(AlphabetError):
        Letter('C', 1)


def test_canonical_order_puts_a_before_b_at_equal_index():
    x1, y1, x2 = Letter(ALPHABET_A, 1), Letter(ALPHABET_B, 1), Letter(ALPHABET_A, 2)
    assert sorted([x2, y1, x1], key=Letter.sort_key) == [x1, y1, x2]
    assert sorted([xw(1, 1), xw(2), EMPTY], key=Word.sort_key) == [EMPTY, xw(2), xw(1, 1)]


def test_ordered_words_shape():
    result = ordered_words(2, 3, 1, 2)
    assert len(result) == 4 * 3
    assert all(w.is_ordered() and w.charge() == 1 for w in result)
    assert len(set(result)) == len(result)


def test_word_helpers():
    w = xw(1, 2) * yw(2)
    assert w.split_ordered() == (xw(1, 2), yw(2))
    assert (yw(1) * xw(1, 2)).inversions() == 2
    with pytest.raises(AlphabetError):
        (yw(1) * xw(1)).split_ordered()
    assert len(mixed_words(1, 1, 3)) == 8
    assert len(words(ALPHABET_B, 3, 2)) == 9


def test_polynomial_drops_zero_coefficients():
    p = poly((1, xw(1)), (2, yw(1)))
    assert (p - p).is_zero()
    assert poly((1, xw(1)), (-1, xw(1))) == NCPoly.zero()
    assert len(poly((0, xw(1)), (3, xw(2)))) == 1


def test_polynomial_text():
    p = poly((1, xw(1) * yw(1)), (-2, xw(2)), (Scalar(0, 1), EMPTY))
    assert str(p) == 'i - 2 x2 + x1 y1'


def test_star_reverses_swaps_and_conjugates():
    p = poly((Scalar(1, 2), xw(1) * yw(2)))
    assert star(p) == poly((Scalar(1, -2), xw(2) * yw(1)))


def test_star_is_an_antimultiplicative_involution(rng):
    for _ in range(25):
        p = poly(*[(Scalar(rng.randint(-3, 3), rng.randint(-3, 3)), random_mixed_word(rng, 2, rng.randint(0, 3)))
                   for _ in range(3)])
        q = poly(*[(Scalar(rng.randint(-3, 3), rng.randint(-3, 3)), random_mixed_word(rng, 2, rng.randint(0, 3)))
                   for _ in range(3)])
        c = Scalar(rng.randint(-3, 3), rng.randint(-3, 3))
        assert star(star(p)) == p
        assert star(p * q) == star(q) * star(p)
        assert star(p.scale(c)) == star(p).scale(c.conj())


def _random_poly(rng, terms=3, max_length=3):
    return poly(*[(Scalar(rng.randint(-3, 3), rng.randint(-3, 3)), random_mixed_word(rng, 2, rng.randint(0, max_length)))
                  for _ in range(terms)])


def test_free_product_is_associative_and_distributive(rng):
    for _ in range(30):
        p, q, r = _random_poly(rng), _random_poly(rng), _random_poly(rng)
        c = Scalar(rng.randint(-3, 3), rng.randint(-3, 3))
        assert poly_mul_free(poly_mul_free(p, q), r) == poly_mul_free(p, poly_mul_free(q, r))
        assert poly_mul_free(p, q + r) == poly_mul_free(p, q) + poly_mul_free(p, r)
        assert poly_mul_free(p + q, r) == poly_mul_free(p, r) + poly_mul_free(q, r)
        assert poly_mul_free(p.scale(c), q) == poly_mul_free(p, q).scale(c)
        assert poly_mul_free(NCPoly.one(), p) == p == poly_mul_free(p, NCPoly.one())


def test_word_product_and_letter_constructors():
    assert word_mul(xw(1, 2), yw(2)) == Word.of(Letter(ALPHABET_A, 1), Letter(ALPHABET_A, 2), Letter(ALPHABET_B, 2))
    assert word_mul(EMPTY, xw(1)) == xw(1) == word_mul(xw(1), EMPTY)
    p = NCPoly.from_letters(Letter(ALPHABET_B, 1), Letter(ALPHABET_A, 2), coeff=-3)
    assert p == poly((-3, yw(1) * xw(2)))
