"""
Exact scalars, letters, words and noncommutative polynomials.

Scalars live in Q(i) and are stored as a pair of Fractions. Words are
tuples of letters from two alphabets: A (generators x^j of E) and B
(generators y^i of F, written x*^i in the Wick setting).
"""
import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .errors import AlphabetError, DimensionError, SpecError

logger = logging.getLogger('crossed_product')

ALPHABET_A = 'A'
ALPHABET_B = 'B'
ALPHABETS = (ALPHABET_A, ALPHABET_B)

_RATIONAL = re.compile(r'^[+-]?\d+(/\d+)?$')


def _to_fraction(value):
    if isinstance(value, bool):
        raise TypeError(f"not an exact scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def _parse_rational(text, original):
    if not _RATIONAL.match(text):
        if re.match(r'^[+-]?[\d.]+(e[+-]?\d+)?$', text, re.IGNORECASE) and ('.' in text or 'e' in text.lower()):
            try:
                suggestion = Fraction(text)
            except ValueError:
                raise SpecError(f"malformed rational '{original}'")
            raise SpecError(
                f"malformed rational '{original}': decimals are not accepted, write {suggestion}"
            )
        raise SpecError(f"malformed rational '{original}'")
    if '/' in text and int(text.split('/')[1]) == 0:
        raise SpecError(f"malformed rational '{original}': zero denominator")
    return Fraction(text)


@dataclass(frozen=True)
class Scalar:
    """An exact element of Q(i)"""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', _to_fraction(self.re))
        object.__setattr__(self, 'im', _to_fraction(self.im))

    @classmethod
    def of(cls, value) -> 'Scalar':
        """Coerce an int, Fraction, Scalar or literal string into a Scalar"""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(Fraction(value))
        raise TypeError(f"not an exact scalar: {value!r}")

    @classmethod
    def parse(cls, text: str) -> 'Scalar':
        """
        Parse a literal of the form "a/b", "a/b+c/d i", "c/d i" or "i".

        Args:
            text: the literal; whitespace is ignored

        Returns:
            Scalar: the parsed value

        Raises:
            SpecError: for decimals, empty input or malformed literals
        """
        s = text.replace(' ', '')
        if not s:
            raise SpecError(f"malformed rational '{text}'")
        if s.endswith('i'):
            body = s[:-1]
            cut = max(body.rfind('+'), body.rfind('-'))
            if cut > 0:
                re_text, im_text = body[:cut], body[cut:]
            else:
                re_text, im_text = '', body
            if im_text in ('', '+'):
                im_text = '1'
            elif im_text == '-':
                im_text = '-1'
        else:
            re_text, im_text = s, ''
        re_part = _parse_rational(re_text, text) if re_text else Fraction(0)
        im_part = _parse_rational(im_text, text) if im_text else Fraction(0)
        return cls(re_part, im_part)

    @classmethod
    def zero(cls) -> 'Scalar':
        return cls()

    @classmethod
    def one(cls) -> 'Scalar':
        return cls(Fraction(1))

    @classmethod
    def i(cls) -> 'Scalar':
        return cls(Fraction(0), Fraction(1))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_positive(self) -> bool:
        """True when the scalar is real and strictly positive"""
        return self.im == 0 and self.re > 0

    def conj(self) -> 'Scalar':
        return Scalar(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> 'Scalar':
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError('inverse of zero scalar')
        return Scalar(self.re / n, -self.im / n)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = Scalar.one()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im_text = '' if abs(self.im) == 1 else f"{abs(self.im)} "
        if self.re == 0:
            return f"{'-' if self.im < 0 else ''}{im_text}i"
        return f"{self.re}{'-' if self.im < 0 else '+'}{im_text}i"

    def __repr__(self):
        return f"Scalar('{self}')"


ScalarLike = Union[Scalar, int, Fraction, str]


@dataclass(frozen=True)
class Letter:
    """A generator: alphabet 'A' (x^index) or 'B' (y^index), index >= 1"""
    alphabet: str
    index: int

    def __post_init__(self):
        if self.alphabet not in ALPHABETS:
            raise AlphabetError(f"unknown alphabet {self.alphabet!r}")
        if not isinstance(self.index, int) or self.index < 1:
            raise DimensionError(f"generator index must be a positive integer, got {self.index!r}")

    @property
    def is_a(self) -> bool:
        return self.alphabet == ALPHABET_A

    @property
    def is_b(self) -> bool:
        return self.alphabet == ALPHABET_B

    def sort_key(self) -> Tuple[int, int]:
        return (self.index, 0 if self.is_a else 1)

    def starred(self) -> 'Letter':
        return Letter(ALPHABET_B if self.is_a else ALPHABET_A, self.index)

    def __str__(self):
        return f"x{self.index}" if self.is_a else f"y{self.index}"

    def __repr__(self):
        return f"Letter({self.alphabet!r}, {self.index})"


def x(index: int) -> Letter:
    return Letter(ALPHABET_A, index)


def y(index: int) -> Letter:
    return Letter(ALPHABET_B, index)


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters; the empty word is the unit"""
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(self.letters))

    @classmethod
    def of(cls, *letters: Letter) -> 'Word':
        return cls(tuple(letters))

    @classmethod
    def from_indices(cls, alphabet: str, indices: Iterable[int]) -> 'Word':
        return cls(tuple(Letter(alphabet, i) for i in indices))

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __mul__(self, other: 'Word') -> 'Word':
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __bool__(self):
        return bool(self.letters)

    def sort_key(self):
        return (len(self.letters), tuple(letter.sort_key() for letter in self.letters))

    def __lt__(self, other: 'Word'):
        return self.sort_key() < other.sort_key()

    def alphabets(self) -> frozenset:
        return frozenset(letter.alphabet for letter in self.letters)

    def is_over(self, alphabet: str) -> bool:
        return all(letter.alphabet == alphabet for letter in self.letters)

    def is_ordered(self) -> bool:
        """No B-letter occurs to the left of an A-letter"""
        seen_b = False
        for letter in self.letters:
            if letter.is_b:
                seen_b = True
            elif seen_b:
                return False
        return True

    def inversions(self) -> int:
        """Number of pairs with a B-letter left of an A-letter"""
        count = 0
        b_seen = 0
        for letter in self.letters:
            if letter.is_b:
                b_seen += 1
            else:
                count += b_seen
        return count

    def charge(self) -> int:
        """#A-letters minus #B-letters"""
        return sum(1 if letter.is_a else -1 for letter in self.letters)

    def split_ordered(self) -> Tuple['Word', 'Word']:
        """Split an ordered word a.b into (a, b)"""
        if not self.is_ordered():
            raise AlphabetError(f"word {self} is not ordered (A-letters before B-letters)")
        cut = sum(1 for letter in self.letters if letter.is_a)
        return Word(self.letters[:cut]), Word(self.letters[cut:])

    def starred(self) -> 'Word':
        """Reverse the word and swap alphabets"""
        return Word(tuple(letter.starred() for letter in reversed(self.letters)))

    def __str__(self):
        if not self.letters:
            return '1'
        return ' '.join(str(letter) for letter in self.letters)

    def __repr__(self):
        return f"Word({self})"


EMPTY = Word()


class NCPoly:
    """
    A finite linear combination of words with Scalar coefficients.

    Instances are immutable and never store zero coefficients, so equality
    is equality of the term maps.
    """
    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Mapping[Word, ScalarLike]] = None):
        cleaned: Dict[Word, Scalar] = {}
        for word, coeff in (terms or {}).items():
            if not isinstance(word, Word):
                raise TypeError(f"polynomial keys must be words, got {word!r}")
            value = Scalar.of(coeff)
            if not value.is_zero():
                cleaned[word] = value
        self._validate(cleaned)
        self._terms = cleaned
        self._hash = None

    def _validate(self, terms):
        pass

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({EMPTY: 1})

    @classmethod
    def from_word(cls, word: Word, coeff: ScalarLike = 1):
        return cls({word: coeff})

    @classmethod
    def from_letters(cls, *letters: Letter, coeff: ScalarLike = 1):
        return cls({Word(letters): coeff})

    @classmethod
    def _accumulate(cls, pairs: Iterable[Tuple[Word, Scalar]]):
        acc: Dict[Word, Scalar] = {}
        for word, coeff in pairs:
            acc[word] = acc.get(word, Scalar.zero()) + coeff
        return cls(acc)

    def items(self) -> List[Tuple[Word, Scalar]]:
        """Terms in canonical word order"""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def words(self) -> List[Word]:
        return [word for word, _ in self.items()]

    def coefficient(self, word: Word) -> Scalar:
        return self._terms.get(word, Scalar.zero())

    def constant_term(self) -> Scalar:
        return self.coefficient(EMPTY)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((len(word) for word in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(word) for word in self._terms}) <= 1

    def homogeneous_components(self) -> Dict[int, 'NCPoly']:
        parts: Dict[int, Dict[Word, Scalar]] = {}
        for word, coeff in self._terms.items():
            parts.setdefault(len(word), {})[word] = coeff
        return {degree: type(self)(terms) for degree, terms in sorted(parts.items())}

    def is_over(self, alphabet: str) -> bool:
        return all(word.is_over(alphabet) for word in self._terms)

    def is_ordered(self) -> bool:
        return all(word.is_ordered() for word in self._terms)

    def scale(self, factor: ScalarLike):
        factor = Scalar.of(factor)
        return type(self)({word: coeff * factor for word, coeff in self._terms.items()})

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return type(self)._accumulate(itertools.chain(self._terms.items(), other._terms.items()))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return poly_mul_free(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


def format_coefficient(coeff: Scalar, word_text: str) -> str:
    """Render one term as text; complex coefficients are parenthesised"""
    if not word_text:
        return str(coeff)
    if coeff == 1:
        return word_text
    if coeff == -1:
        return f"-{word_text}"
    if coeff.is_real():
        return f"{coeff} {word_text}"
    return f"({coeff}) {word_text}"


def format_poly(p: NCPoly, word_format=str) -> str:
    if p.is_zero():
        return '0'
    parts = []
    for word, coeff in p.items():
        parts.append(format_coefficient(coeff, word_format(word) if word else ''))
    text = parts[0]
    for part in parts[1:]:
        text += f" - {part[1:]}" if part.startswith('-') else f" + {part}"
    return text


def word_mul(w1: Word, w2: Word) -> Word:
    return w1 * w2


def poly_mul_free(p: NCPoly, q: NCPoly) -> NCPoly:
    """Product in the free algebra (concatenation)"""
    return NCPoly._accumulate(
        (w1 * w2, c1 * c2) for w1, c1 in p.items() for w2, c2 in q.items()
    )


def star(p: NCPoly) -> NCPoly:
    """
    The antilinear involution: reverse each word, swap alphabets and
    conjugate the coefficient.
    """
    return NCPoly({word.starred(): coeff.conj() for word, coeff in p.items()})


def words(alphabet: str, dim: int, length: int) -> List[Word]:
    """All words of the given length over one alphabet, in canonical order"""
    if dim < 1:
        raise DimensionError(f"dimension must be positive, got {dim}")
    return [
        Word.from_indices(alphabet, indices)
        for indices in itertools.product(range(1, dim + 1), repeat=length)
    ]


def words_up_to(alphabet: str, dim: int, degree: int, start: int = 0) -> List[Word]:
    result = []
    for length in range(start, degree + 1):
        result.extend(words(alphabet, dim, length))
    return result


def ordered_words(dim_a: int, dim_b: int, k: int, l: int) -> List[Word]:
    """Ordered words a.b with |b| = k B-letters and |a| = l A-letters"""
    result = [
        a * b for a in words(ALPHABET_A, dim_a, l) for b in words(ALPHABET_B, dim_b, k)
    ]
    return sorted(result, key=Word.sort_key)


def mixed_words(dim_a: int, dim_b: int, length: int) -> List[Word]:
    """All words of a given length over both alphabets"""
    letters = [Letter(ALPHABET_A, i) for i in range(1, dim_a + 1)]
    letters += [Letter(ALPHABET_B, i) for i in range(1, dim_b + 1)]
    result = [Word(combo) for combo in itertools.product(letters, repeat=length)]
    return sorted(result, key=Word.sort_key)
