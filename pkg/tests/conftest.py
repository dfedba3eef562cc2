import os
import random

import pytest

from crossed_product.core import ALPHABET_A, ALPHABET_B, Letter, NCPoly, Scalar, Word
from crossed_product.cross import TwistMatrix
from crossed_product.wick import WickSpec

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), 'fixtures')


def fixture_path(*parts):
    return os.path.join(FIXTURES_DIR, *parts)


def xw(*indices):
    """Word over the A alphabet"""
    return Word.from_indices(ALPHABET_A, indices)


def yw(*indices):
    """Word over the B alphabet"""
    return Word.from_indices(ALPHABET_B, indices)


def poly(*terms):
    """poly((coeff, word), ...)"""
    acc = {}
    for coeff, word in terms:
        acc[word] = acc.get(word, Scalar.zero()) + Scalar.of(coeff)
    return NCPoly(acc)


def random_twist(rng, dim_a, dim_b, bound=2):
    entries = {}
    for index in TwistMatrix.switch(dim_a, dim_b).indices():
        if rng.random() < 0.4:
            entries[index] = Scalar(rng.randint(-bound, bound), rng.randint(-bound, bound))
    return TwistMatrix.from_entries(dim_a, dim_b, entries)


def random_mixed_word(rng, dim, length):
    return Word(tuple(
        Letter(rng.choice((ALPHABET_A, ALPHABET_B)), rng.randint(1, dim)) for _ in range(length)
    ))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def car2():
    return WickSpec.car(2)


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR
