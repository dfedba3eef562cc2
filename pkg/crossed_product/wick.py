"""
Wick algebras: generators x^i and x*^i with relations
x*^i x^j = delta^{ij} + sum_{k,l} t[i, j, k, l] x^k x*^l.

The B alphabet plays the role of the conjugate generators x*^i.
"""
import itertools
import logging
import random
import traceback
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List

from .config import MAX_WITNESSES, STRATEGY_LEFTMOST, STRATEGY_RIGHTMOST, check_degree
from .core import NCPoly, Scalar, ScalarLike, mixed_words, ordered_words
from .cross import Cross, TwistMatrix, verify_associativity, wick_order
from .errors import DimensionError, PreconditionError
from .models import CheckResult, VerificationReport

logger = logging.getLogger('crossed_product')


def check_star_cross(t: TwistMatrix) -> bool:
    """
    conj(t[i, j, k, l]) = t[j, i, l, k] for all indices.

    Applying the involution to the defining relation of x*^i x^j gives the
    relation of x*^j x^i with conjugated, index-swapped coefficients.
    """
    return not star_cross_violations(t)


def star_cross_violations(t: TwistMatrix) -> List[Dict[str, str]]:
    if t.dim_a != t.dim_b:
        raise DimensionError(f"star-cross needs a square twist, got dim_a = {t.dim_a}, dim_b = {t.dim_b}")
    violations = []
    for i, j, k, l in t.indices():
        left = t.coefficient(i, j, k, l).conj()
        right = t.coefficient(j, i, l, k)
        if left != right:
            violations.append({
                'entry': f"({i}, {j}, {k}, {l})",
                'conjugate': str(left),
                'partner': f"({j}, {i}, {l}, {k})",
                'partner_value': str(right),
            })
    return violations


@dataclass(frozen=True)
class WickSpec:
    """
    A Wick algebra with dim generators.

    Args:
        dim: number of generators x^1..x^dim
        twist: twist matrix of dimensions (dim, dim)
        require_star_cross: reject twists failing the star-cross condition
    """
    dim: int
    twist: TwistMatrix
    require_star_cross: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.twist.dim_a != self.dim or self.twist.dim_b != self.dim:
            raise DimensionError(
                f"twist dimensions ({self.twist.dim_a}, {self.twist.dim_b}) do not match {self.dim}"
            )
        if self.require_star_cross:
            violations = star_cross_violations(self.twist)
            if violations:
                raise PreconditionError(f"twist is not star-cross: {violations[0]}")

    @property
    def cross(self) -> Cross:
        return _wick_cross(self.twist)

    @classmethod
    def q_ccr(cls, n: int, q: ScalarLike) -> 'WickSpec':
        """x*^i x^j = delta^{ij} + q x^j x*^i"""
        return cls(n, TwistMatrix.q_cross(n, n, q))

    @classmethod
    def car(cls, n: int) -> 'WickSpec':
        return cls.q_ccr(n, -1)

    @classmethod
    def random_hermitian(cls, n: int, rng: random.Random, bound: int = 3,
                         density: float = 0.5) -> 'WickSpec':
        """
        Random star-cross twist with small Gaussian rational entries.

        Entries come in pairs (i, j, k, l) / (j, i, l, k) with conjugate
        values; self-paired entries are real.
        """
        entries = {}
        for i, j, k, l in itertools.product(range(1, n + 1), repeat=4):
            partner = (j, i, l, k)
            if (i, j, k, l) in entries or rng.random() > density:
                continue
            re_part = rng.randint(-bound, bound) * Scalar.one() / rng.randint(1, bound)
            if partner == (i, j, k, l):
                value = re_part
            else:
                value = re_part + Scalar.i() * rng.randint(-bound, bound) / rng.randint(1, bound)
            entries[(i, j, k, l)] = value
            entries[partner] = value.conj()
        return cls(n, TwistMatrix.from_entries(n, n, entries))


@lru_cache(maxsize=None)
def _wick_cross(t: TwistMatrix) -> Cross:
    return Cross.wick(t)


def normal_order(spec: WickSpec, p: NCPoly, strategy: str = STRATEGY_LEFTMOST) -> NCPoly:
    """Wick ordered form: every x^k to the left of every x*^l"""
    return wick_order(spec.cross, p, strategy)


def check_wick_basis(spec: WickSpec, d: int) -> VerificationReport:
    """
    Evidence that the Wick ordered words span freely up to degree d.

    Checks:
        confluence: leftmost and rightmost rewriting agree on every word
            over both alphabets of length <= d
        closure: products of ordered words normal-order to ordered words with
            charge preserved and at most dim^(k + l) words per bidegree
        associativity: of the induced product on ordered words
    """
    check_degree(d, minimum=1)
    logger.info(f"Checking Wick basis for dim {spec.dim} up to degree {d}")
    try:
        c = spec.cross
        n = spec.dim

        failures, checked = [], 0
        for length in range(d + 1):
            for word in mixed_words(n, n, length):
                checked += 1
                left = normal_order(spec, NCPoly.from_word(word), STRATEGY_LEFTMOST)
                right = normal_order(spec, NCPoly.from_word(word), STRATEGY_RIGHTMOST)
                if left != right:
                    failures.append({'word': str(word), 'leftmost': str(left), 'rightmost': str(right)})
        confluence = CheckResult('confluence', not failures, failures[:MAX_WITNESSES], checked)

        failures, checked = [], 0
        census: Dict[tuple, set] = defaultdict(set)
        ordered = [
            w for total in range(1, d + 1)
            for l in range(total + 1)
            for w in ordered_words(n, n, total - l, l)
        ]
        for u in ordered:
            for v in ordered:
                if len(u) + len(v) > d:
                    continue
                checked += 1
                product = normal_order(spec, NCPoly.from_word(u * v))
                charge = (u * v).charge()
                for word in product.words():
                    if not word.is_ordered() or word.charge() != charge:
                        failures.append({'u': str(u), 'v': str(v), 'word': str(word)})
                        continue
                    a_part, b_part = word.split_ordered()
                    census[(len(b_part), len(a_part))].add(word)
        for (k, l), seen in sorted(census.items()):
            if len(seen) > n ** (k + l):
                failures.append({'bidegree': f"({k}, {l})", 'words': len(seen), 'bound': n ** (k + l)})
        closure = CheckResult('closure', not failures, failures[:MAX_WITNESSES], checked)

        checks = [confluence, closure]
        if d >= 3:
            checks.append(verify_associativity(c, d))
        report = VerificationReport(checks)
        logger.info(f"Wick basis up to degree {d}: {'pass' if report.passed else 'FAIL'}")
        return report
    except Exception as e:
        logger.error(f"Error checking Wick basis: {str(e)}")
        logger.error(traceback.format_exc())
        raise
