"""
Quadratic algebras, their rewrite systems and crosses between them.

Operators on tensor products are numpy object matrices of Scalars. A matrix
row is an output index tuple and a column an input index tuple, both
flattened row-major with the first tensor factor most significant, so
np.kron(A, B) acts as A (x) B.
"""
import itertools
import logging
import math
import traceback
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .config import MAX_WITNESSES, check_degree
from .core import (
    ALPHABET_A,
    ALPHABET_B,
    Letter,
    NCPoly,
    Scalar,
    ScalarLike,
    Word,
    mixed_words,
    words,
)
from .cross import Cross, TwistMatrix, wick_order
from .errors import AlphabetError, DimensionError, PreconditionError, VerificationAbort
from .models import CheckResult, VerificationReport
from .utils.linalg import EchelonBasis, rank

logger = logging.getLogger('crossed_product')


def _flat_index(dims: Sequence[int], index: Sequence[int]) -> int:
    flat = 0
    for dim, i in zip(dims, index):
        flat = flat * dim + (i - 1)
    return flat


def _unflatten(dims: Sequence[int], flat: int) -> Tuple[int, ...]:
    index = []
    for dim in reversed(dims):
        flat, rem = divmod(flat, dim)
        index.append(rem + 1)
    return tuple(reversed(index))


class Operator2:
    """
    A linear map between tensor products of generator spaces.

    Args:
        matrix: object array of Scalars, shape (prod(out_dims), prod(in_dims))
        in_dims: dimensions of the input tensor factors
        out_dims: dimensions of the output tensor factors
    """

    def __init__(self, matrix, in_dims: Sequence[int], out_dims: Sequence[int]):
        self.in_dims = tuple(in_dims)
        self.out_dims = tuple(out_dims)
        rows, cols = math.prod(self.out_dims), math.prod(self.in_dims)
        array = np.empty((rows, cols), dtype=object)
        source = np.asarray(matrix, dtype=object)
        if source.shape != (rows, cols):
            raise DimensionError(
                f"operator matrix has shape {source.shape}, expected {(rows, cols)}"
            )
        for r in range(rows):
            for c in range(cols):
                array[r, c] = Scalar.of(source[r, c])
        self.matrix = array

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], in_dims=None, out_dims=None) -> 'Operator2':
        """Build from nested rows; square matrices default to E (x) E with dim = sqrt(size)"""
        size = len(rows)
        if in_dims is None or out_dims is None:
            dim = math.isqrt(size)
            if dim * dim != size or any(len(row) != size for row in rows):
                raise DimensionError(
                    f"a {size}x{len(rows[0]) if rows else 0} matrix is not an operator on E (x) E"
                )
            in_dims = in_dims or (dim, dim)
            out_dims = out_dims or (dim, dim)
        return cls([[Scalar.of(v) for v in row] for row in rows], in_dims, out_dims)

    @classmethod
    def zeros(cls, out_dims: Sequence[int], in_dims: Sequence[int]) -> 'Operator2':
        shape = (math.prod(out_dims), math.prod(in_dims))
        return cls(np.full(shape, Scalar.zero(), dtype=object), in_dims, out_dims)

    @classmethod
    def identity(cls, dims: Sequence[int]) -> 'Operator2':
        size = math.prod(dims)
        matrix = np.full((size, size), Scalar.zero(), dtype=object)
        for i in range(size):
            matrix[i, i] = Scalar.one()
        return cls(matrix, dims, dims)

    @classmethod
    def flip(cls, m: int, n: int) -> 'Operator2':
        """e_i (x) f_j -> f_j (x) e_i, from dims (m, n) to (n, m)"""
        op = cls.zeros((n, m), (m, n))
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                op.matrix[_flat_index((n, m), (j, i)), _flat_index((m, n), (i, j))] = Scalar.one()
        return op

    @property
    def dim(self) -> int:
        """Generator dimension of an endomorphism of E (x) E"""
        if self.in_dims != self.out_dims or len(self.in_dims) != 2 or self.in_dims[0] != self.in_dims[1]:
            raise DimensionError(f"operator {self.out_dims}<-{self.in_dims} is not an endomorphism of E (x) E")
        return self.in_dims[0]

    def entry(self, out_index: Sequence[int], in_index: Sequence[int]) -> Scalar:
        return self.matrix[_flat_index(self.out_dims, out_index), _flat_index(self.in_dims, in_index)]

    def rows(self) -> List[List[Scalar]]:
        return [list(row) for row in self.matrix]

    def __matmul__(self, other: 'Operator2') -> 'Operator2':
        if self.in_dims != other.out_dims:
            raise DimensionError(f"cannot compose {self.in_dims} with output {other.out_dims}")
        return Operator2(self.matrix @ other.matrix, other.in_dims, self.out_dims)

    def _check_same(self, other):
        if self.in_dims != other.in_dims or self.out_dims != other.out_dims:
            raise DimensionError('operators act between different spaces')

    def __add__(self, other: 'Operator2') -> 'Operator2':
        self._check_same(other)
        return Operator2(self.matrix + other.matrix, self.in_dims, self.out_dims)

    def __sub__(self, other: 'Operator2') -> 'Operator2':
        self._check_same(other)
        return Operator2(self.matrix - other.matrix, self.in_dims, self.out_dims)

    def scale(self, factor: ScalarLike) -> 'Operator2':
        factor = Scalar.of(factor)
        return Operator2(
            np.vectorize(lambda v: v * factor, otypes=[object])(self.matrix),
            self.in_dims, self.out_dims,
        )

    def kron(self, other: 'Operator2') -> 'Operator2':
        """self (x) other"""
        return Operator2(
            np.kron(self.matrix, other.matrix),
            self.in_dims + other.in_dims,
            self.out_dims + other.out_dims,
        )

    def transpose(self) -> 'Operator2':
        return Operator2(self.matrix.T, self.out_dims, self.in_dims)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.matrix.flat)

    def first_nonzero(self) -> Optional[Dict[str, object]]:
        for (r, c), value in np.ndenumerate(self.matrix):
            if not value.is_zero():
                return {
                    'row': list(_unflatten(self.out_dims, r)),
                    'column': list(_unflatten(self.in_dims, c)),
                    'value': str(value),
                }
        return None

    def __eq__(self, other):
        if not isinstance(other, Operator2):
            return NotImplemented
        return (self.in_dims == other.in_dims and self.out_dims == other.out_dims
                and all(a == b for a, b in zip(self.matrix.flat, other.matrix.flat)))

    def __hash__(self):
        return hash((self.in_dims, self.out_dims, tuple(self.matrix.flat)))

    def __repr__(self):
        return f"Operator2({self.out_dims}<-{self.in_dims}, {[[str(v) for v in row] for row in self.rows()]})"


def _square_dim(op: Operator2, name: str) -> int:
    try:
        return op.dim
    except DimensionError as e:
        raise DimensionError(f"{name}: {e}")


def check_braid(R: Operator2) -> bool:
    """R12 R23 R12 = R23 R12 R23 on E (x) E (x) E"""
    m = _square_dim(R, 'R')
    one = Operator2.identity((m,))
    r12, r23 = R.kron(one), one.kron(R)
    return r12 @ r23 @ r12 == r23 @ r12 @ r23


def check_hecke(R: Operator2, q: ScalarLike) -> bool:
    """(R - q)(R + 1/q) = 0"""
    q = Scalar.of(q)
    if q.is_zero():
        raise PreconditionError('Hecke parameter q must be nonzero')
    m = _square_dim(R, 'R')
    ident = Operator2.identity((m, m))
    return ((R - ident.scale(q)) @ (R + ident.scale(q.inverse()))).is_zero()


def _consistency_operands(R: Operator2, S: Operator2, C: Operator2):
    m = _square_dim(R, 'R')
    n = _square_dim(S, 'S')
    if C.in_dims != (n, m) or C.out_dims != (m, n):
        raise DimensionError(
            f"C must map F (x) E {(n, m)} to E (x) F {(m, n)}, got {C.in_dims} -> {C.out_dims}"
        )
    return m, n, Operator2.identity((m,)), Operator2.identity((n,))


def check_consistency(R: Operator2, S: Operator2, C: Operator2) -> VerificationReport:
    """
    Consistency of a homogeneous cross C: F (x) E -> E (x) F with the
    relation operators R on E (x) E and S on F (x) F.

    On F (x) E (x) E:
        (I_m (x) C)(C (x) I_m)(I - I_n (x) R) = (I - R (x) I_n)(I_m (x) C)(C (x) I_m)
    On F (x) F (x) E:
        (C (x) I_n)(I_n (x) C)(I - S (x) I_m) = (I - I_m (x) S)(C (x) I_n)(I_n (x) C)
    """
    m, n, im, in_ = _consistency_operands(R, S, C)
    try:
        move_a = im.kron(C) @ C.kron(im)
        lhs_a = move_a @ (Operator2.identity((n, m, m)) - in_.kron(R))
        rhs_a = (Operator2.identity((m, m, n)) - R.kron(in_)) @ move_a
        diff_a = lhs_a - rhs_a

        move_b = C.kron(in_) @ in_.kron(C)
        lhs_b = move_b @ (Operator2.identity((n, n, m)) - S.kron(im))
        rhs_b = (Operator2.identity((m, n, n)) - im.kron(S)) @ move_b
        diff_b = lhs_b - rhs_b

        checks = []
        for name, diff in (('consistency_a', diff_a), ('consistency_b', diff_b)):
            witness = diff.first_nonzero()
            checks.append(CheckResult(name, witness is None, [witness] if witness else [], 1))
        return VerificationReport(checks)
    except DimensionError:
        raise
    except Exception as e:
        logger.error(f"Error checking consistency: {str(e)}")
        logger.error(traceback.format_exc())
        raise


def check_sufficient(R: Operator2, S: Operator2, C: Operator2) -> bool:
    """
    Sufficient conditions for consistency:
        (I_m (x) C)(C (x) I_m)(I_n (x) R) = (R (x) I_n)(I_m (x) C)(C (x) I_m)
        (C (x) I_n)(I_n (x) C)(S (x) I_m) = (I_m (x) S)(C (x) I_n)(I_n (x) C)
    """
    return sufficient_report(R, S, C).passed


def sufficient_report(R: Operator2, S: Operator2, C: Operator2) -> VerificationReport:
    m, n, im, in_ = _consistency_operands(R, S, C)
    move_a = im.kron(C) @ C.kron(im)
    move_b = C.kron(in_) @ in_.kron(C)
    checks = []
    for name, diff in (
        ('sufficient_a', move_a @ in_.kron(R) - R.kron(in_) @ move_a),
        ('sufficient_b', move_b @ S.kron(im) - im.kron(S) @ move_b),
    ):
        witness = diff.first_nonzero()
        checks.append(CheckResult(name, witness is None, [witness] if witness else [], 1))
    return VerificationReport(checks)


def standard_hecke(q: ScalarLike) -> Operator2:
    """
    Two-dimensional Hecke operator with (R - q)(R + 1/q) = 0 whose quadratic
    algebra image(I - R/q) is spanned by x1 x2 - q x2 x1.
    """
    q = Scalar.of(q)
    if q.is_zero():
        raise PreconditionError('Hecke parameter q must be nonzero')
    z = Scalar.zero()
    one = Scalar.one()
    return Operator2.from_rows([
        [q, z, z, z],
        [z, q - q.inverse(), one, z],
        [z, one, z, z],
        [z, z, z, q],
    ])


def operator_from_twist(t: TwistMatrix) -> Operator2:
    """C[(k, l), (i, j)] = t[i, j, k, l] as a map F (x) E -> E (x) F"""
    op = Operator2.zeros((t.dim_a, t.dim_b), (t.dim_b, t.dim_a))
    for (i, j, k, l), value in t.entries:
        op.matrix[_flat_index((t.dim_a, t.dim_b), (k, l)), _flat_index((t.dim_b, t.dim_a), (i, j))] = value
    return op


def twist_from_operator(C: Operator2) -> TwistMatrix:
    """Inverse of operator_from_twist"""
    if len(C.in_dims) != 2 or C.out_dims != (C.in_dims[1], C.in_dims[0]):
        raise DimensionError(f"C must map F (x) E to E (x) F, got {C.in_dims} -> {C.out_dims}")
    n, m = C.in_dims
    entries = {}
    for (r, c), value in np.ndenumerate(C.matrix):
        if not value.is_zero():
            k, l = _unflatten((m, n), r)
            i, j = _unflatten((n, m), c)
            entries[(i, j, k, l)] = value
    return TwistMatrix.from_entries(m, n, entries)


def _word_key(order: Tuple[int, ...]):
    rank = {index: position for position, index in enumerate(order)}

    def key(word: Word):
        return (len(word), tuple(rank[letter.index] for letter in word))
    return key


@dataclass(frozen=True)
class RewriteSystem:
    """
    Oriented relations lead -> rhs over one alphabet.

    Args:
        alphabet: 'A' or 'B'
        dim: number of generators
        rules: pairs (leading word, replacement); every replacement word is
            smaller than its leading word under the order
        order: generators listed from smallest to largest
    """
    alphabet: str
    dim: int
    rules: Tuple[Tuple[Word, NCPoly], ...] = ()
    order: Tuple[int, ...] = ()

    def __post_init__(self):
        order = tuple(self.order) or tuple(range(1, self.dim + 1))
        if sorted(order) != list(range(1, self.dim + 1)):
            raise PreconditionError(f"generator order {order} is not a permutation of 1..{self.dim}")
        object.__setattr__(self, 'order', order)
        key = _word_key(order)
        seen = set()
        for lead, rhs in self.rules:
            if lead in seen:
                raise PreconditionError(f"two rules share the leading word {lead}")
            seen.add(lead)
            for word in [lead] + rhs.words():
                if not word.is_over(self.alphabet):
                    raise AlphabetError(f"rule word {word} is not over alphabet {self.alphabet}")
                if any(letter.index > self.dim for letter in word):
                    raise DimensionError(f"rule word {word} uses a generator beyond {self.dim}")
            if any(key(word) >= key(lead) for word in rhs.words()):
                raise PreconditionError(f"rule {lead} -> {rhs} does not decrease under the order")
        object.__setattr__(self, 'rules', tuple(sorted(self.rules, key=lambda r: key(r[0]))))

    @property
    def key(self):
        return _word_key(self.order)

    @property
    def leads(self) -> Dict[Word, NCPoly]:
        return _rule_table(self)

    def is_irreducible(self, word: Word) -> bool:
        return self._match(word) is None

    def _match(self, word: Word) -> Optional[Tuple[int, Word]]:
        table = self.leads
        lengths = sorted({len(lead) for lead in table})
        for pos in range(len(word)):
            for length in lengths:
                piece = word[pos:pos + length]
                if len(piece) == length and piece in table:
                    return pos, piece
        return None

    def reduce(self, p: NCPoly) -> NCPoly:
        """Normal form of p: leftmost rule application until irreducible"""
        acc: Dict[Word, Scalar] = defaultdict(Scalar.zero)
        for word, coeff in p.items():
            for final, value in _reduce_word(self, word).items():
                acc[final] += coeff * value
        return NCPoly(acc)

    def irreducible_words(self, length: int) -> List[Word]:
        return [w for w in words(self.alphabet, self.dim, length) if self.is_irreducible(w)]

    def check_local_confluence(self) -> CheckResult:
        """Resolve every overlap of two leading words"""
        failures, checked = [], 0
        for (l1, r1), (l2, r2) in itertools.product(self.rules, repeat=2):
            for overlap in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - overlap:] != l2[:overlap]:
                    continue
                checked += 1
                word = l1 * l2[overlap:]
                first = self.reduce(r1 * NCPoly.from_word(l2[overlap:]))
                second = self.reduce(NCPoly.from_word(l1[:len(l1) - overlap]) * r2)
                if first != second:
                    failures.append({'overlap': str(word), 'via_first': str(first), 'via_second': str(second)})
        return CheckResult('local_confluence', not failures, failures[:MAX_WITNESSES], checked)


@lru_cache(maxsize=None)
def _rule_table(system: RewriteSystem) -> Dict[Word, NCPoly]:
    return dict(system.rules)


@lru_cache(maxsize=None)
def _reduce_word(system: RewriteSystem, word: Word) -> NCPoly:
    match = system._match(word)
    if match is None:
        return NCPoly.from_word(word)
    pos, lead = match
    left, right = NCPoly.from_word(word[:pos]), NCPoly.from_word(word[pos + len(lead):])
    return system.reduce(left * system.leads[lead] * right)


def rules_from_relations(alphabet: str, dim: int, relations: Iterable[NCPoly],
                         order: Sequence[int] = ()) -> RewriteSystem:
    """
    Orient a spanning set of homogeneous relations: row reduce with the
    largest word as pivot and read each row as pivot -> -(rest).
    """
    order = tuple(order) or tuple(range(1, dim + 1))
    key = _word_key(order)
    basis = EchelonBasis(key)
    for rel in relations:
        if not rel.is_homogeneous():
            raise PreconditionError(f"relation {rel} is not homogeneous")
        basis.add(dict(rel.items()))
    rules = []
    for lead, row in basis.reduced_rows():
        rhs = NCPoly({w: -v for w, v in row.items() if w != lead})
        rules.append((lead, rhs))
    return RewriteSystem(alphabet, dim, tuple(rules), order)


def relation_image(R: Operator2, alphabet: str) -> List[NCPoly]:
    """Columns of I - R read as degree-two polynomials"""
    m = _square_dim(R, 'R')
    diff = Operator2.identity((m, m)) - R
    relations = []
    for c in range(m * m):
        terms = {}
        for r in range(m * m):
            value = diff.matrix[r, c]
            if not value.is_zero():
                k, l = _unflatten((m, m), r)
                terms[Word.of(Letter(alphabet, k), Letter(alphabet, l))] = value
        if terms:
            relations.append(NCPoly(terms))
    return relations


@dataclass(frozen=True)
class QuadraticAlgebra:
    """T(E) modulo the ideal generated by degree-two relations"""
    dim: int
    alphabet: str
    rewrite: RewriteSystem
    relation: Optional[Operator2] = field(default=None, compare=False)

    @classmethod
    def free(cls, dim: int, alphabet: str = ALPHABET_A) -> 'QuadraticAlgebra':
        return cls(dim, alphabet, RewriteSystem(alphabet, dim))

    @classmethod
    def from_operator(cls, R: Operator2, alphabet: str = ALPHABET_A,
                      order: Sequence[int] = ()) -> 'QuadraticAlgebra':
        """Algebra with relations image(I - R)"""
        m = _square_dim(R, 'R')
        return cls(m, alphabet, rules_from_relations(alphabet, m, relation_image(R, alphabet), order), R)

    @classmethod
    def from_relations(cls, dim: int, alphabet: str, relations: Iterable[NCPoly],
                       order: Sequence[int] = ()) -> 'QuadraticAlgebra':
        return cls(dim, alphabet, rules_from_relations(alphabet, dim, relations, order))

    @classmethod
    def from_rules(cls, dim: int, alphabet: str, rules: Iterable[Tuple[Word, NCPoly]],
                   order: Sequence[int] = ()) -> 'QuadraticAlgebra':
        return cls(dim, alphabet, RewriteSystem(alphabet, dim, tuple(rules), tuple(order)))

    def generators(self) -> List[NCPoly]:
        """Ideal generators lead - rhs"""
        return [NCPoly.from_word(lead) - rhs for lead, rhs in self.rewrite.rules]

    def normal_form(self, p: NCPoly) -> NCPoly:
        return self.rewrite.reduce(p)

    def dimension(self, length: int) -> int:
        """dim of the degree-length component, by rank of the ideal"""
        span = _IdealSpan(tuple(self.generators()), self.alphabet, self.dim)
        return self.dim ** length - span.basis(length).rank

    def in_ideal(self, p: NCPoly) -> bool:
        return in_ideal(p, self.generators(), self.alphabet, self.dim)


class _IdealSpan:
    """Spans of the two-sided ideal generated by homogeneous polynomials, by degree"""

    def __init__(self, gens: Sequence[NCPoly], alphabet: str, dim: int):
        for g in gens:
            if not g.is_homogeneous():
                raise PreconditionError(f"ideal generator {g} is not homogeneous")
            if not g.is_over(alphabet):
                raise AlphabetError(f"ideal generator {g} is not over alphabet {alphabet}")
        self.gens = [g for g in gens if not g.is_zero()]
        self.alphabet = alphabet
        self.dim = dim
        self._bases: Dict[int, EchelonBasis] = {}

    def basis(self, degree: int) -> EchelonBasis:
        if degree not in self._bases:
            echelon = EchelonBasis(Word.sort_key)
            for g in self.gens:
                e = g.degree()
                if e > degree:
                    continue
                for s in range(degree - e + 1):
                    for u in words(self.alphabet, self.dim, s):
                        for v in words(self.alphabet, self.dim, degree - e - s):
                            echelon.add(dict((NCPoly.from_word(u) * g * NCPoly.from_word(v)).items()))
            self._bases[degree] = echelon
        return self._bases[degree]

    def contains(self, p: NCPoly) -> bool:
        return all(
            self.basis(degree).contains(dict(part.items()))
            for degree, part in p.homogeneous_components().items()
        )


def in_ideal(p: NCPoly, gens: Sequence[NCPoly], alphabet: str, dim: int) -> bool:
    """Membership of p in the two-sided ideal generated by homogeneous gens"""
    if not p.is_over(alphabet):
        raise AlphabetError(f"{p} is not over alphabet {alphabet}")
    return _IdealSpan(gens, alphabet, dim).contains(p)


def check_tau_ideal(c: Cross, ideal_gens: Sequence[NCPoly], side: str, d: int) -> CheckResult:
    """
    Check that the cross descends to the quotient on one side.

    side 'A': tau(b (x) g) lies in I_A (x) B for every B-word b of length
    1..d and every generator g of I_A.
    side 'B': tau(g (x) a) lies in A (x) I_B for every A-word a of length
    1..d and every generator g of I_B.
    """
    check_degree(d, minimum=1)
    if side not in (ALPHABET_A, ALPHABET_B):
        raise PreconditionError(f"side must be 'A' or 'B', got {side!r}")
    dim = c.dim_a if side == ALPHABET_A else c.dim_b
    span = _IdealSpan(tuple(ideal_gens), side, dim)
    other = ALPHABET_B if side == ALPHABET_A else ALPHABET_A
    other_dim = c.dim_b if side == ALPHABET_A else c.dim_a
    failures, checked = [], 0
    for length in range(1, d + 1):
        for w in words(other, other_dim, length):
            for number, g in enumerate(span.gens):
                checked += 1
                image: Dict[Word, Scalar] = defaultdict(Scalar.zero)
                for gw, gc in g.items():
                    result = c.apply(w, gw) if side == ALPHABET_A else c.apply(gw, w)
                    for word, value in result.items():
                        image[word] += gc * value
                groups: Dict[Word, Dict[Word, Scalar]] = defaultdict(dict)
                for word, value in NCPoly(image).items():
                    a_part, b_part = word.split_ordered()
                    if side == ALPHABET_A:
                        groups[b_part][a_part] = value
                    else:
                        groups[a_part][b_part] = value
                for partner, part in sorted(groups.items(), key=lambda item: item[0].sort_key()):
                    if not span.contains(NCPoly(part)):
                        failures.append({
                            'word': str(w), 'generator': number, 'relation': str(g),
                            'component': str(partner), 'residue': str(NCPoly(part)),
                        })
                        break
    name = 'tau_ideal_a' if side == ALPHABET_A else 'tau_ideal_b'
    return CheckResult(name, not failures, failures[:MAX_WITNESSES], checked)


def _require_confluent(algebra: QuadraticAlgebra, label: str):
    result = algebra.rewrite.check_local_confluence()
    if not result.passed:
        raise PreconditionError(f"rewrite system of {label} is not confluent: {result.witnesses[0]}")


def _presentation(c: Cross, A: QuadraticAlgebra, B: QuadraticAlgebra) -> List[NCPoly]:
    """Relations of A and B plus y x - tau_0(y x), tau_0 the pairing-free part of the cross"""
    gens = list(A.generators()) + list(B.generators())
    for i in range(1, c.dim_b + 1):
        for j in range(1, c.dim_a + 1):
            b, a = Letter(ALPHABET_B, i), Letter(ALPHABET_A, j)
            top = NCPoly({w: v for w, v in c.generator_rule(b, a).items() if len(w) == 2})
            gens.append(NCPoly.from_letters(b, a) - top)
    return [g for g in gens if not g.is_zero()]


def _bidegree(word: Word) -> Tuple[int, int]:
    """(number of B-letters, number of A-letters)"""
    a_count = sum(1 for letter in word if letter.is_a)
    return len(word) - a_count, a_count


def graded_dimension(c: Cross, A: QuadraticAlgebra, B: QuadraticAlgebra, k: int, l: int) -> int:
    """
    Dimension of the bidegree (k, l) part of the crossed product, k B-letters
    and l A-letters, computed from its presentation: mixed words modulo the
    bigraded ideal generated by the relations of A, of B and the cross
    relations. The crossed product is a tensor product of vector spaces
    exactly when this equals dim A_l * dim B_k.

    Raises:
        PreconditionError: unconfluent rewriting, or a cross that does not
            preserve the ideals
    """
    if A.dim != c.dim_a or B.dim != c.dim_b:
        raise DimensionError('algebra dimensions do not match the cross')
    check_degree(k + l)
    _descends(c, A, B, min(max(k + l, 2), 4))
    n = k + l
    basis = [w for w in mixed_words(c.dim_a, c.dim_b, n) if _bidegree(w) == (k, l)]
    spanning = []
    for g in _presentation(c, A, B):
        for s in range(n - 1):
            for u in mixed_words(c.dim_a, c.dim_b, s):
                for v in mixed_words(c.dim_a, c.dim_b, n - 2 - s):
                    p = NCPoly.from_word(u) * g * NCPoly.from_word(v)
                    if p and _bidegree(p.words()[0]) == (k, l):
                        spanning.append(dict(p.items()))
    return len(basis) - rank(spanning, Word.sort_key)


@lru_cache(maxsize=None)
def _descends(c: Cross, A: QuadraticAlgebra, B: QuadraticAlgebra, d: int):
    _require_confluent(A, 'A')
    _require_confluent(B, 'B')
    for side, algebra in ((ALPHABET_A, A), (ALPHABET_B, B)):
        result = check_tau_ideal(c, algebra.generators(), side, d)
        if not result.passed:
            raise PreconditionError(f"cross does not preserve the ideal of {side}: {result.witnesses[0]}")


def quotient_normal_form(c: Cross, A: QuadraticAlgebra, B: QuadraticAlgebra, p: NCPoly) -> NCPoly:
    """Normal form of p in the quotient crossed product A x_tau B"""
    if A.dim != c.dim_a or B.dim != c.dim_b:
        raise DimensionError('algebra dimensions do not match the cross')
    _descends(c, A, B, min(max(p.degree(), 2), 4))
    acc: Dict[Word, Scalar] = defaultdict(Scalar.zero)
    for word, coeff in wick_order(c, p).items():
        a_part, b_part = word.split_ordered()
        for wa, ca in A.normal_form(NCPoly.from_word(a_part)).items():
            for wb, cb in B.normal_form(NCPoly.from_word(b_part)).items():
                acc[wa * wb] += coeff * ca * cb
    return NCPoly(acc)


def weyl_twist(R: Operator2, q: ScalarLike) -> TwistMatrix:
    """t[i, j, k, l] = q R[(j, l), (i, k)]"""
    q = Scalar.of(q)
    m = _square_dim(R, 'R')
    entries = {}
    for i, j, k, l in itertools.product(range(1, m + 1), repeat=4):
        value = q * R.entry((j, l), (i, k))
        if not value.is_zero():
            entries[(i, j, k, l)] = value
    return TwistMatrix.from_entries(m, m, entries)


@dataclass(frozen=True)
class QuantumWeyl:
    """Quantum Weyl algebra data built from a Hecke operator"""
    q: Scalar
    R: Operator2
    a: QuadraticAlgebra
    b: QuadraticAlgebra
    cross: Cross
    cover_b: QuadraticAlgebra
    cover_cross: Cross
    report: VerificationReport = field(compare=False, hash=False)


def build_quantum_weyl(R: Operator2, q: ScalarLike, d: int = 3) -> QuantumWeyl:
    """
    Build the quantum Weyl algebra of a Hecke operator R.

    The homogeneous cover uses R_A = R/q, S = R^t/q and C = qR and must pass
    consistency, the sufficient conditions and both ideal checks. The
    algebra itself uses the pairing cross y^i x^j -> delta^{ij} +
    q R[(j, l), (i, k)] x^k y^l with B relations image(I - P R^t P / q).

    Raises:
        PreconditionError: q = 0
        VerificationAbort: R fails the braid or Hecke relation
    """
    q = Scalar.of(q)
    if q.is_zero():
        raise PreconditionError('Hecke parameter q must be nonzero')
    m = _square_dim(R, 'R')
    if not check_braid(R):
        raise VerificationAbort('braid', 'R12 R23 R12 != R23 R12 R23')
    if not check_hecke(R, q):
        raise VerificationAbort('hecke', f"(R - q)(R + 1/q) != 0 for q = {q}")
    logger.info(f"Building quantum Weyl algebra for m = {m}, q = {q}")
    try:
        report = VerificationReport([CheckResult('braid', True, [], 1), CheckResult('hecke', True, [], 1)])

        r_a = R.scale(q.inverse())
        s_cover = R.transpose().scale(q.inverse())
        c_cover = R.scale(q)
        a = QuadraticAlgebra.from_operator(r_a, ALPHABET_A)
        cover_b = QuadraticAlgebra.from_operator(s_cover, ALPHABET_B)
        cover_cross = Cross.homogeneous(twist_from_operator(c_cover))
        report.extend(check_consistency(r_a, s_cover, c_cover))
        report.extend(sufficient_report(r_a, s_cover, c_cover))
        for check in (check_tau_ideal(cover_cross, a.generators(), ALPHABET_A, d),
                      check_tau_ideal(cover_cross, cover_b.generators(), ALPHABET_B, d)):
            check.name = f"cover_{check.name}"
            report.extend(check)

        flip = Operator2.flip(m, m)
        s_weyl = (flip @ R.transpose() @ flip).scale(q.inverse())
        b = QuadraticAlgebra.from_operator(s_weyl, ALPHABET_B)
        cross = Cross.wick(weyl_twist(R, q))
        report.extend(check_tau_ideal(cross, a.generators(), ALPHABET_A, d))
        report.extend(check_tau_ideal(cross, b.generators(), ALPHABET_B, d))
        for label, algebra in (('a', a), ('b', b)):
            check = algebra.rewrite.check_local_confluence()
            check.name = f"confluence_{label}"
            report.extend(check)

        logger.info(f"Quantum Weyl algebra checks: {'pass' if report.passed else 'FAIL'}")
        return QuantumWeyl(q, R, a, b, cross, cover_b, cover_cross, report)
    except Exception as e:
        logger.error(f"Error building quantum Weyl algebra: {str(e)}")
        logger.error(traceback.format_exc())
        raise
