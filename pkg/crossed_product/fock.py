"""
Fock representation of a Wick algebra.

Vectors are polynomials in the creation generators x^i applied to the
vacuum. Creation is left multiplication by x^i; annihilation is fixed by
a_i|0> = 0 and a_i x^j = delta^{ij} + sum t[i, j, k, l] x^k a_l.
"""
import logging
import traceback
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .config import MAX_WITNESSES, check_degree
from .core import ALPHABET_A, Letter, NCPoly, Scalar, Word, mixed_words, star, words, words_up_to
from .errors import AlphabetError, DimensionError, PreconditionError
from .models import CheckResult, VerificationReport
from .utils.linalg import hermitian_pivot, quadratic_form
from .wick import WickSpec, normal_order

logger = logging.getLogger('crossed_product')


class FockVector(NCPoly):
    """A finite combination of creation words acting on the vacuum"""
    __slots__ = ()

    def _validate(self, terms):
        for word in terms:
            if not word.is_over(ALPHABET_A):
                raise AlphabetError(f"Fock vectors are built from A-letters only, got {word}")

    @classmethod
    def vacuum(cls) -> 'FockVector':
        return cls.one()


Annihilation = Callable[[WickSpec, int, FockVector], FockVector]


def _check_index(spec: WickSpec, i: int):
    if not 1 <= i <= spec.dim:
        raise DimensionError(f"generator index {i} out of range 1..{spec.dim}")


def _as_fock(v) -> FockVector:
    return v if isinstance(v, FockVector) else FockVector(dict(v.items()))


def apply_creation(spec: WickSpec, i: int, v: FockVector) -> FockVector:
    _check_index(spec, i)
    letter = Word.of(Letter(ALPHABET_A, i))
    return FockVector({letter * word: coeff for word, coeff in _as_fock(v).items()})


def apply_annihilation(spec: WickSpec, i: int, v: FockVector) -> FockVector:
    _check_index(spec, i)
    acc: Dict[Word, Scalar] = defaultdict(Scalar.zero)
    for word, coeff in _as_fock(v).items():
        for out, value in _annihilate_word(spec.twist, i, word).items():
            acc[out] += coeff * value
    return FockVector(acc)


@lru_cache(maxsize=None)
def _annihilate_word(twist, i: int, word: Word) -> FockVector:
    if not word:
        return FockVector()
    j, rest = word[0].index, word[1:]
    acc: Dict[Word, Scalar] = defaultdict(Scalar.zero)
    if i == j:
        acc[rest] += Scalar.one()
    for (k, l), value in twist.image(i, j):
        head = Word.of(Letter(ALPHABET_A, k))
        for out, inner in _annihilate_word(twist, l, rest).items():
            acc[head * out] += value * inner
    return FockVector(acc)


def _basis_inner(spec: WickSpec, u: Word, v: Word, annihilation: Annihilation) -> Scalar:
    """<u|v>: vacuum coefficient of a_{u_k} ... a_{u_1} v"""
    if len(u) != len(v):
        return Scalar.zero()
    state = FockVector.from_word(v)
    for letter in u:
        state = annihilation(spec, letter.index, state)
        if state.is_zero():
            return Scalar.zero()
    return state.constant_term()


@lru_cache(maxsize=None)
def _cached_inner(spec: WickSpec, u: Word, v: Word) -> Scalar:
    return _basis_inner(spec, u, v, apply_annihilation)


def inner_product(spec: WickSpec, f: FockVector, g: FockVector,
                  annihilation: Optional[Annihilation] = None) -> Scalar:
    """<f|g>, antilinear in f"""
    total = Scalar.zero()
    for u, cu in _as_fock(f).items():
        for v, cv in _as_fock(g).items():
            value = (_cached_inner(spec, u, v) if annihilation is None
                     else _basis_inner(spec, u, v, annihilation))
            total = total + cu.conj() * cv * value
    return total


@dataclass(frozen=True)
class GramMatrix:
    """Gram matrix of the creation words of one degree"""
    degree: int
    basis: Tuple[Word, ...]
    entries: Tuple[Tuple[Scalar, ...], ...]

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry(self, u: Word, v: Word) -> Scalar:
        return self.entries[self.basis.index(u)][self.basis.index(v)]

    def is_hermitian(self) -> bool:
        return all(
            self.entries[r][c] == self.entries[c][r].conj()
            for r in range(self.size) for c in range(self.size)
        )

    def rows(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self.entries]


def gram_matrix(spec: WickSpec, n: int) -> GramMatrix:
    """G[u][v] = <u|v> over A-words of length n in canonical order"""
    check_degree(n)
    basis = tuple(words(ALPHABET_A, spec.dim, n))
    logger.debug(f"Computing Gram matrix of degree {n} ({len(basis)} words)")
    entries = tuple(tuple(_cached_inner(spec, u, v) for v in basis) for u in basis)
    return GramMatrix(n, basis, entries)


@dataclass(frozen=True)
class PsdResult:
    psd: bool
    kernel_dim: int
    rank: int
    witness: Optional[FockVector] = None
    witness_norm: Optional[Scalar] = None


def check_psd(g: GramMatrix) -> PsdResult:
    """
    Exact positive semidefiniteness by Hermitian pivoting.

    Returns:
        PsdResult: kernel dimension when PSD, else a vector v with <v|v> < 0
            expressed in the Gram basis
    """
    if not g.is_hermitian():
        raise PreconditionError(f"Gram matrix of degree {g.degree} is not Hermitian")
    psd, pivots, witness = hermitian_pivot(g.entries)
    if psd:
        return PsdResult(True, g.size - pivots, pivots)
    vector = FockVector({word: coeff for word, coeff in zip(g.basis, witness)})
    norm = quadratic_form(g.entries, witness)
    return PsdResult(False, 0, pivots, vector, norm)


def inner_product_via_normal_order(spec: WickSpec, u: Word, v: Word) -> Scalar:
    """<u|v> as the constant term of normal_order(star(u) v)"""
    return _oracle_inner(spec, u, v)


@lru_cache(maxsize=None)
def _oracle_inner(spec: WickSpec, u: Word, v: Word) -> Scalar:
    if len(u) != len(v):
        return Scalar.zero()
    product = star(NCPoly.from_word(u)) * NCPoly.from_word(v)
    return normal_order(spec, product).constant_term()


def _oracle_vector_inner(spec: WickSpec, f: FockVector, g: FockVector) -> Scalar:
    total = Scalar.zero()
    for u, cu in f.items():
        for v, cv in g.items():
            total = total + cu.conj() * cv * _oracle_inner(spec, u, v)
    return total


def check_adjointness(spec: WickSpec, d: int,
                      annihilation: Optional[Annihilation] = None) -> CheckResult:
    """
    <a_i^+ u | v> = <u | a_i v> for all i and creation words u, v with
    |u| + 1 = |v| <= d.

    Inner products come from normal ordering in the algebra, so an
    injected annihilation operator is tested against the relations rather
    than against itself.
    """
    check_degree(d, minimum=1)
    annihilation = annihilation or apply_annihilation
    failures, checked = [], 0
    for length in range(1, d + 1):
        for i in range(1, spec.dim + 1):
            for u in words(ALPHABET_A, spec.dim, length - 1):
                created = apply_creation(spec, i, FockVector.from_word(u))
                for v in words(ALPHABET_A, spec.dim, length):
                    checked += 1
                    target = FockVector.from_word(v)
                    lhs = _oracle_vector_inner(spec, created, target)
                    rhs = _oracle_vector_inner(spec, FockVector.from_word(u), annihilation(spec, i, target))
                    if lhs != rhs:
                        failures.append({'i': i, 'u': str(u), 'v': str(v), 'lhs': str(lhs), 'rhs': str(rhs)})
    return CheckResult('adjointness', not failures, failures[:MAX_WITNESSES], checked)


def represent(spec: WickSpec, p: NCPoly, v: FockVector) -> FockVector:
    """Action of an algebra element: x^i creates, x*^i annihilates"""
    acc: Dict[Word, Scalar] = defaultdict(Scalar.zero)
    for word, coeff in p.items():
        state = _as_fock(v)
        for letter in reversed(word.letters):
            if letter.is_a:
                state = apply_creation(spec, letter.index, state)
            else:
                state = apply_annihilation(spec, letter.index, state)
        for out, value in state.items():
            acc[out] += coeff * value
    return FockVector(acc)


def check_hermitian_representation(spec: WickSpec, d: int, length: int = 2) -> CheckResult:
    """<represent(w*) f | g> = <f | represent(w) g> for words w up to length"""
    check_degree(d, minimum=1)
    failures, checked = [], 0
    vectors = words_up_to(ALPHABET_A, spec.dim, d)
    for size in range(1, length + 1):
        for w in mixed_words(spec.dim, spec.dim, size):
            charge = w.charge()
            for f in vectors:
                for g in vectors:
                    if len(f) != len(g) + charge:
                        continue
                    checked += 1
                    lhs = inner_product(spec, represent(spec, star(NCPoly.from_word(w)), FockVector.from_word(f)),
                                        FockVector.from_word(g))
                    rhs = inner_product(spec, FockVector.from_word(f),
                                        represent(spec, NCPoly.from_word(w), FockVector.from_word(g)))
                    if lhs != rhs:
                        failures.append({'w': str(w), 'f': str(f), 'g': str(g), 'lhs': str(lhs), 'rhs': str(rhs)})
    return CheckResult('hermitian_representation', not failures, failures[:MAX_WITNESSES], checked)


def check_commutation_relations(spec: WickSpec, d: int) -> CheckResult:
    """a_i a_j^+ w = delta^{ij} w + sum t[i, j, k, l] a_k^+ a_l w on creation words"""
    check_degree(d)
    failures, checked = [], 0
    for w in words_up_to(ALPHABET_A, spec.dim, d):
        vector = FockVector.from_word(w)
        for i in range(1, spec.dim + 1):
            for j in range(1, spec.dim + 1):
                checked += 1
                lhs = apply_annihilation(spec, i, apply_creation(spec, j, vector))
                rhs = vector if i == j else FockVector()
                for (k, l), value in spec.twist.image(i, j):
                    rhs = rhs + apply_creation(spec, k, apply_annihilation(spec, l, vector)).scale(value)
                if lhs != rhs:
                    failures.append({'i': i, 'j': j, 'w': str(w), 'lhs': str(lhs), 'rhs': str(rhs)})
    return CheckResult('commutation_relations', not failures, failures[:MAX_WITNESSES], checked)


def fock_report(spec: WickSpec, d: int) -> VerificationReport:
    """Gram PSD per degree plus the adjointness and oracle checks"""
    check_degree(d, minimum=1)
    try:
        checks = []
        for n in range(d + 1):
            result = check_psd(gram_matrix(spec, n))
            witnesses = [] if result.psd else [{
                'vector': str(result.witness), 'norm': str(result.witness_norm),
            }]
            checks.append(CheckResult(f"psd_degree_{n}", result.psd, witnesses, 1))
        checks.append(check_adjointness(spec, d))
        failures, checked = [], 0
        for n in range(d + 1):
            for u in words(ALPHABET_A, spec.dim, n):
                for v in words(ALPHABET_A, spec.dim, n):
                    checked += 1
                    direct = _cached_inner(spec, u, v)
                    oracle = inner_product_via_normal_order(spec, u, v)
                    if direct != oracle:
                        failures.append({'u': str(u), 'v': str(v), 'fock': str(direct), 'normal_order': str(oracle)})
        checks.append(CheckResult('inner_product_oracle', not failures, failures[:MAX_WITNESSES], checked))
        return VerificationReport(checks)
    except Exception as e:
        logger.error(f"Error building Fock report: {str(e)}")
        logger.error(traceback.format_exc())
        raise
