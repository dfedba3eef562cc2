"""
Exact linear algebra over Q(i).

Vectors are sparse dicts from a hashable key (usually a Word) to Scalar.
Elimination always pivots on the largest key under a caller supplied
ordering, so row reduction doubles as leading-term selection for rewrite
rules.
"""
import logging
from typing import Callable, Dict, Hashable, Iterable, List, Sequence, Tuple

from ..core import Scalar

logger = logging.getLogger('crossed_product')

SparseVector = Dict[Hashable, Scalar]


def clean(vector: SparseVector) -> SparseVector:
    return {key: value for key, value in vector.items() if not value.is_zero()}


def axpy(target: SparseVector, factor: Scalar, source: SparseVector) -> SparseVector:
    """Return target + factor * source"""
    result = dict(target)
    for key, value in source.items():
        result[key] = result.get(key, Scalar.zero()) + factor * value
    return clean(result)


class EchelonBasis:
    """
    Incrementally built echelon basis of a subspace.

    Args:
        key: ordering on vector keys; the pivot of a row is its largest key
    """

    def __init__(self, key: Callable = None, vectors: Iterable[SparseVector] = ()):
        self.key = key or (lambda k: k)
        self.rows: Dict[Hashable, SparseVector] = {}
        for vector in vectors:
            self.add(vector)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivot_of(self, vector: SparseVector):
        return max(vector, key=self.key)

    def reduce(self, vector: SparseVector) -> SparseVector:
        """Residual of the vector modulo the span"""
        residual = clean(vector)
        while True:
            hits = [k for k in residual if k in self.rows]
            if not hits:
                return residual
            pivot = max(hits, key=self.key)
            residual = axpy(residual, -residual[pivot], self.rows[pivot])

    def contains(self, vector: SparseVector) -> bool:
        return not self.reduce(vector)

    def add(self, vector: SparseVector) -> bool:
        """Add a vector; returns False when it was already in the span"""
        residual = self.reduce(vector)
        if not residual:
            return False
        pivot = self.pivot_of(residual)
        inverse = residual[pivot].inverse()
        self.rows[pivot] = {k: v * inverse for k, v in residual.items()}
        return True

    def reduced_rows(self) -> List[Tuple[Hashable, SparseVector]]:
        """
        Fully reduced rows in ascending pivot order: every pivot appears in
        exactly one row, with coefficient 1.
        """
        done: Dict[Hashable, SparseVector] = {}
        for pivot in sorted(self.rows, key=self.key):
            row = dict(self.rows[pivot])
            for other in sorted(done, key=self.key, reverse=True):
                if other in row:
                    row = axpy(row, -row[other], done[other])
            done[pivot] = row
        return sorted(done.items(), key=lambda item: self.key(item[0]))


def rank(vectors: Iterable[SparseVector], key: Callable = None) -> int:
    return EchelonBasis(key, vectors).rank


def hermitian_pivot(matrix: Sequence[Sequence[Scalar]]):
    """
    Decide positive semidefiniteness of a Hermitian matrix by symmetric
    Schur complement elimination on positive diagonal pivots.

    Args:
        matrix: square Hermitian matrix of Scalars

    Returns:
        tuple: (psd, pivots, witness) where pivots is the number of positive
            pivots used and witness is None or a coefficient list v with
            v* M v < 0
    """
    size = len(matrix)
    work = [[Scalar.of(v) for v in row] for row in matrix]
    # basis[r] expresses the current coordinate r in original coordinates
    basis = [[Scalar.one() if i == r else Scalar.zero() for i in range(size)] for r in range(size)]
    active = list(range(size))
    pivots = 0

    while active:
        for r in active:
            if not work[r][r].is_real():
                raise ValueError(f"diagonal entry {r} is not real: {work[r][r]}")
            if work[r][r].re < 0:
                return False, pivots, basis[r]

        pivot = next((r for r in active if work[r][r].is_positive()), None)
        if pivot is None:
            # all remaining diagonals vanish; any off-diagonal entry breaks PSD
            for r in active:
                for c in active:
                    s = work[r][c]
                    if r != c and not s.is_zero():
                        # (e_r - conj(s) e_c)* M (e_r - conj(s) e_c) = -2|s|^2
                        witness = [
                            basis[r][i] - s.conj() * basis[c][i] for i in range(size)
                        ]
                        return False, pivots, witness
            return True, pivots, None

        d = work[pivot][pivot]
        rest = [r for r in active if r != pivot]
        for r in rest:
            factor = work[r][pivot] / d
            for c in rest:
                work[r][c] = work[r][c] - factor * work[pivot][c]
            # new coordinate r is e_r - conj(M_rp / d) e_p in original terms
            coeff = factor.conj()
            basis[r] = [basis[r][i] - coeff * basis[pivot][i] for i in range(size)]
        pivots += 1
        active = rest

    return True, pivots, None


def quadratic_form(matrix: Sequence[Sequence[Scalar]], vector: Sequence[Scalar]) -> Scalar:
    """v* M v"""
    total = Scalar.zero()
    for i, vi in enumerate(vector):
        if vi.is_zero():
            continue
        for j, vj in enumerate(vector):
            if vj.is_zero():
                continue
            total = total + vi.conj() * matrix[i][j] * vj
    return total
