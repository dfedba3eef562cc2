"""
Service class running verification commands against a spec file
"""
import logging
import traceback
from typing import Any, Dict, List, Optional, Tuple

from .config import (
    DEFAULT_DEGREE,
    MAX_WITNESSES,
    REPORT_SCHEMA_VERSION,
    STRATEGY_LEFTMOST,
    STRATEGY_RIGHTMOST,
    check_degree,
    conventions,
)
from .core import ALPHABET_A, ALPHABET_B, Scalar, Word
from .cross import verify_associativity, verify_cross_axioms, wick_order
from .errors import SpecError, VerificationAbort
from .fock import check_adjointness, check_commutation_relations, check_psd, fock_report, gram_matrix
from .models import CheckResult, Report
from .quadratic import (
    Operator2,
    build_quantum_weyl,
    check_consistency,
    check_tau_ideal,
    graded_dimension,
    quotient_normal_form,
    standard_hecke,
    sufficient_report,
)
from .specfile import AlgebraSpecFile, spec_to_data
from .utils.helpers import compute_digest
from .wick import check_wick_basis, star_cross_violations

logger = logging.getLogger('crossed_product')


class CrossedProductService:
    """
    Runs one command against an optional spec and builds its report.

    Every public command method returns (checks, results); run() wraps
    them into a Report with the inputs digest and conventions block.
    """

    def __init__(self, spec: Optional[AlgebraSpecFile] = None, operators: Optional[Dict[str, Operator2]] = None):
        self.spec = spec
        self.operators = dict(spec.operators) if spec else {}
        self.operators.update(operators or {})

    def _require_spec(self, command: str) -> AlgebraSpecFile:
        if self.spec is None:
            raise SpecError(f"{command}: a spec file is required")
        return self.spec

    def _degree(self, options: Dict[str, Any], minimum: int = 1) -> int:
        degree = options.get('degree')
        return check_degree(DEFAULT_DEGREE if degree is None else degree, minimum)

    def run(self, command: str, options: Dict[str, Any]) -> Report:
        """Run a command and build its report"""
        handler = getattr(self, f"cmd_{command.replace('-', '_')}", None)
        if handler is None:
            raise SpecError(f"unknown command '{command}'")
        logger.info(f"Running {command} with options {sorted((k, str(v)) for k, v in options.items())}")
        try:
            checks, results = handler(options)
        except VerificationAbort as e:
            checks = [CheckResult(e.identity, False, [{'message': str(e)}], 1)]
            results = {}
        except Exception as e:
            logger.error(f"Error running {command}: {str(e)}")
            logger.debug(traceback.format_exc())
            raise
        digest = compute_digest(
            spec_to_data(self.spec) if self.spec else None,
            {k: _jsonable(v) for k, v in sorted(options.items())},
            {k: _operator_json(v) for k, v in sorted(self.operators.items())},
        )
        return Report(
            command=command,
            inputs_digest=digest,
            conventions=conventions(),
            checks=checks,
            results=results,
            schema_version=REPORT_SCHEMA_VERSION,
        )

    def cmd_verify(self, options) -> Tuple[List[CheckResult], Dict[str, Any]]:
        spec = self._require_spec('verify')
        d = self._degree(options)
        cross = spec.cross()
        checks = list(verify_cross_axioms(cross, d).checks)
        if d >= 3:
            checks.append(verify_associativity(cross, d))
        for alphabet in sorted(spec.relations):
            algebra = spec.relations[alphabet]
            confluence = algebra.rewrite.check_local_confluence()
            confluence.name = f"confluence_{alphabet.lower()}"
            checks.append(confluence)
            checks.append(check_tau_ideal(cross, algebra.generators(), alphabet, min(d, 3)))
        results = {
            'degree': d,
            'dim_a': spec.dim_a,
            'dim_b': spec.dim_b,
            'homogeneous': cross.is_homogeneous,
            'overrides': len(spec.overrides),
        }
        return checks, results

    def cmd_wick_basis(self, options):
        spec = self._require_spec('wick-basis')
        d = self._degree(options)
        wick = spec.wick_spec()
        report = check_wick_basis(wick, d)
        census = {
            f"{k},{l}": wick.dim ** (k + l)
            for k, l in _bidegrees(d)
        }
        return report.checks, {'degree': d, 'dim': wick.dim, 'ordered_words': census}

    def cmd_star_cross(self, options):
        spec = self._require_spec('star-cross')
        violations = star_cross_violations(spec.twist)
        check = CheckResult('star_cross', not violations, violations[:MAX_WITNESSES], len(list(spec.twist.indices())))
        return [check], {'violations': len(violations)}

    def cmd_normal_form(self, options):
        spec = self._require_spec('normal-form')
        text = options.get('poly')
        if not text:
            raise SpecError('normal-form: --poly is required')
        p = spec.parse_poly(text, 'poly')
        cross = spec.cross()
        left = wick_order(cross, p, STRATEGY_LEFTMOST)
        right = wick_order(cross, p, STRATEGY_RIGHTMOST)
        checks = [CheckResult('confluence', left == right, [] if left == right else [{
            'leftmost': spec.format_poly(left), 'rightmost': spec.format_poly(right),
        }], 1)]
        result = left
        if spec.relations:
            result = quotient_normal_form(cross, spec.algebra(ALPHABET_A), spec.algebra(ALPHABET_B), p)
        return checks, {'input': spec.format_poly(p), 'normal_form': spec.format_poly(result)}

    def cmd_gram(self, options):
        spec = self._require_spec('gram')
        n = check_degree(options.get('degree') if options.get('degree') is not None else 2, 0)
        wick = spec.wick_spec()
        gram = gram_matrix(wick, n)
        results = {
            'degree': n,
            'basis': [spec.format_word(w) for w in gram.basis],
            'matrix': gram.rows(),
        }
        checks = []
        if options.get('psd'):
            result = check_psd(gram)
            results['kernel_dim'] = result.kernel_dim
            results['rank'] = result.rank
            witnesses = [] if result.psd else [{
                'vector': spec.format_poly(result.witness), 'norm': str(result.witness_norm),
            }]
            checks.append(CheckResult('psd', result.psd, witnesses, 1))
        return checks, results

    def cmd_adjoint(self, options):
        spec = self._require_spec('adjoint')
        d = self._degree(options)
        wick = spec.wick_spec()
        checks = [check_adjointness(wick, d), check_commutation_relations(wick, d - 1)]
        oracle = fock_report(wick, min(d, 3)).check('inner_product_oracle')
        checks.append(oracle)
        return checks, {'degree': d, 'dim': wick.dim}

    def cmd_dims(self, options):
        spec = self._require_spec('dims')
        d = self._degree(options, minimum=0)
        a, b = spec.algebra(ALPHABET_A), spec.algebra(ALPHABET_B)
        cross = spec.cross()
        checks, results = [], {'degree': d}
        for label, algebra in (('a', a), ('b', b)):
            confluence = algebra.rewrite.check_local_confluence()
            confluence.name = f"confluence_{label}"
            checks.append(confluence)
            counted = [len(algebra.rewrite.irreducible_words(l)) for l in range(d + 1)]
            ranked = [algebra.dimension(l) for l in range(d + 1)]
            mismatch = [
                {'degree': l, 'normal_words': c, 'by_rank': r}
                for l, (c, r) in enumerate(zip(counted, ranked)) if c != r
            ]
            checks.append(CheckResult(f"dimension_count_{label}", not mismatch, mismatch, d + 1))
            results[label.upper()] = counted
        for side, algebra in ((ALPHABET_A, a), (ALPHABET_B, b)):
            checks.append(check_tau_ideal(cross, algebra.generators(), side, min(max(d, 2), 4)))
        if all(c.passed for c in checks):
            table, check = _bidegree_table(cross, a, b, d)
            checks.append(check)
            results['bidegree'] = table
        return checks, results

    def cmd_consistency(self, options):
        missing = [name for name in ('R', 'S', 'C') if name not in self.operators]
        if missing:
            raise SpecError(f"consistency: missing operators {', '.join(missing)}")
        R, S, C = self.operators['R'], self.operators['S'], self.operators['C']
        report = check_consistency(R, S, C)
        sufficient = sufficient_report(R, S, C)
        return report.checks, {
            'sufficient': sufficient.passed,
            'sufficient_checks': [c.to_dict() for c in sufficient.checks],
        }

    def cmd_weyl(self, options):
        q = options.get('q')
        if q is None and self.spec is not None and 'q' in self.spec.parameters:
            q = self.spec.parameters['q']
        if q is None:
            raise SpecError('weyl: --q is required')
        q = Scalar.of(q)
        R = self.operators.get('R') or standard_hecke(q)
        weyl = build_quantum_weyl(R, q)
        d = 3
        cross = weyl.cross
        rules = {}
        for i in range(1, R.dim + 1):
            for j in range(1, R.dim + 1):
                b, a = Word.from_indices(ALPHABET_B, [i]), Word.from_indices(ALPHABET_A, [j])
                rules[f"{b} {a}"] = str(cross.apply(b, a))
        results = {
            'q': str(q),
            'm': R.dim,
            'a_rules': [f"{lead} -> {rhs}" for lead, rhs in weyl.a.rewrite.rules],
            'b_rules': [f"{lead} -> {rhs}" for lead, rhs in weyl.b.rewrite.rules],
            'cross': rules,
        }
        checks = list(weyl.report.checks)
        if weyl.report.passed:
            table, check = _bidegree_table(cross, weyl.a, weyl.b, d)
            checks.append(check)
            results['bidegree'] = table
        return checks, results


def _jsonable(value):
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    return str(value)


def _operator_json(op: Operator2):
    return {'rows': [[str(v) for v in row] for row in op.rows()], 'in': list(op.in_dims), 'out': list(op.out_dims)}


def _bidegrees(d: int):
    """(k, l) with k + l <= d, by total degree"""
    for total in range(d + 1):
        for k in range(total + 1):
            yield k, total - k


def _bidegree_table(cross, a, b, d: int):
    """Bidegree dimensions of the crossed product against dim A_l * dim B_k"""
    table, mismatch = {}, []
    for k, l in _bidegrees(d):
        value = graded_dimension(cross, a, b, k, l)
        product = len(a.rewrite.irreducible_words(l)) * len(b.rewrite.irreducible_words(k))
        table[f"{k},{l}"] = value
        if value != product:
            mismatch.append({'bidegree': f"{k},{l}", 'dimension': value, 'product': product})
    return table, CheckResult('bidegree_product', not mismatch, mismatch[:MAX_WITNESSES], len(table))
