"""
Crossed Product Package

Exact symbolic engine for crossed tensor products of algebras: twisted
products defined by a cross tau: B (x) A -> A (x) B, quadratic quotients,
Wick algebras and their Fock representations.
"""

__version__ = '0.1.0'

from .core import Scalar, Letter, Word, NCPoly, star
from .cross import TwistMatrix, Cross, extend_twist, wick_order, crossed_mul, verify_cross_axioms, verify_associativity
from .quadratic import (
    Operator2,
    QuadraticAlgebra,
    RewriteSystem,
    check_braid,
    check_hecke,
    check_consistency,
    check_sufficient,
    check_tau_ideal,
    graded_dimension,
    quotient_normal_form,
    build_quantum_weyl,
    standard_hecke,
)
from .wick import WickSpec, check_star_cross, normal_order, check_wick_basis
from .fock import FockVector, apply_creation, apply_annihilation, gram_matrix, check_psd, check_adjointness
from .service import CrossedProductService
from .specfile import parse_spec, serialize_spec


def load_wick_algebra(path, checked=None):
    """
    Load a spec file and return its Wick algebra

    Args:
        path: spec file path
        checked: override the spec's star-cross requirement

    Returns:
        WickSpec instance
    """
    return parse_spec(path).wick_spec(checked)


__all__ = [
    'Scalar', 'Letter', 'Word', 'NCPoly', 'star',
    'TwistMatrix', 'Cross', 'extend_twist', 'wick_order', 'crossed_mul',
    'verify_cross_axioms', 'verify_associativity',
    'Operator2', 'QuadraticAlgebra', 'RewriteSystem', 'check_braid', 'check_hecke',
    'check_consistency', 'check_sufficient', 'check_tau_ideal', 'graded_dimension',
    'quotient_normal_form', 'build_quantum_weyl', 'standard_hecke',
    'WickSpec', 'check_star_cross', 'normal_order', 'check_wick_basis',
    'FockVector', 'apply_creation', 'apply_annihilation', 'gram_matrix', 'check_psd',
    'check_adjointness', 'CrossedProductService', 'parse_spec', 'serialize_spec',
    'load_wick_algebra',
]
