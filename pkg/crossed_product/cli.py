"""
Command line interface.

    crossed-product verify spec.json --degree 4
    crossed-product gram spec.json --degree 2 --psd
    crossed-product weyl --q 1/2

Reports are JSON on stdout. Exit codes: 0 every check passed, 1 a check
failed, 2 invalid input.
"""
import argparse
import json
import logging
import sys
import traceback
from typing import Any, Dict, Optional, Sequence, Tuple

from dotenv import load_dotenv

from .config import setup_logging
from .errors import CrossedProductError, SpecError
from .models import Report
from .service import CrossedProductService
from .specfile import AlgebraSpecFile, parse_operator_data, parse_spec
from .utils.helpers import parse_json_field

logger = logging.getLogger('crossed_product')

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

COMMANDS = {
    'verify': 'check the cross axioms and associativity up to a degree',
    'wick-basis': 'check that Wick ordered words form a basis up to a degree',
    'star-cross': 'check conj(t[i,j,k,l]) = t[j,i,l,k]',
    'normal-form': 'print the normal form of a polynomial',
    'gram': 'print the Fock Gram matrix of one degree',
    'adjoint': 'check adjointness of creation and annihilation operators',
    'dims': 'graded dimensions of the quotient algebras',
    'consistency': 'check consistency of R, S and a homogeneous cross C',
    'weyl': 'build and check the quantum Weyl algebra of a Hecke operator',
}

SPEC_OPTIONAL = ('consistency', 'weyl')


def build_parser():
    """Parse command line arguments"""
    parser = argparse.ArgumentParser(
        prog='crossed-product',
        description='Exact verification of crossed tensor products and Wick algebras',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name, help_text in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument('spec', nargs='?' if name in SPEC_OPTIONAL else None, help='spec file (JSON)')
        sub.add_argument('--output', help='write the report to a file instead of stdout', default=None)
        if name in ('verify', 'wick-basis', 'gram', 'adjoint', 'dims'):
            sub.add_argument('--degree', type=int, default=None, help='degree bound')
        if name == 'gram':
            sub.add_argument('--psd', action='store_true', help='decide positive semidefiniteness')
        if name == 'normal-form':
            sub.add_argument('--poly', required=True, help="polynomial, e.g. 'x1* x1 - 2 x2'")
        if name in ('consistency', 'weyl'):
            sub.add_argument('--R', dest='R', help='operator file for R', default=None)
        if name == 'consistency':
            sub.add_argument('--S', dest='S', help='operator file for S', default=None)
            sub.add_argument('--C', dest='C', help='operator file for C', default=None)
        if name == 'weyl':
            sub.add_argument('--q', help='Hecke parameter, e.g. 1/2', default=None)
    return parser


def _load_operators(args, spec: Optional[AlgebraSpecFile]):
    parameters = spec.parameters if spec else {}
    operators = {}
    for name in ('R', 'S', 'C'):
        path = getattr(args, name, None)
        if not path:
            continue
        try:
            with open(path, 'r', encoding='utf-8') as handle:
                data = parse_json_field(handle.read())
        except OSError as e:
            raise SpecError(f"{path}: cannot read operator file ({e.strerror})")
        except json.JSONDecodeError as e:
            raise SpecError(f"{path}: invalid JSON ({e.msg})")
        operators[name] = parse_operator_data(data, parameters, name)
    return operators


def _options(args) -> Dict[str, Any]:
    options = {}
    for key in ('degree', 'psd', 'poly', 'q'):
        value = getattr(args, key, None)
        if value is not None and value is not False:
            options[key] = value
    return options


def run_command(command: str, spec: Optional[AlgebraSpecFile], options: Dict[str, Any],
                operators=None) -> Tuple[Report, int]:
    """
    Run one command.

    Returns:
        tuple: (report, exit code 0 or 1)

    Raises:
        CrossedProductError: invalid input, mapped to exit code 2 by main
    """
    service = CrossedProductService(spec, operators)
    report = service.run(command, options)
    return report, EXIT_PASS if report.passed else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    setup_logging('crossed_product')
    args = build_parser().parse_args(argv)
    try:
        spec = parse_spec(args.spec) if args.spec else None
        operators = _load_operators(args, spec)
        report, code = run_command(args.command, spec, _options(args), operators)
    except SpecError as e:
        logger.error(f"Invalid input for {args.command}: {len(e.errors)} problem(s)")
        for message in e.errors:
            print(f"error: {message}", file=sys.stderr)
        return EXIT_INPUT
    except CrossedProductError as e:
        logger.error(f"Cannot run {args.command}: {str(e)}")
        logger.debug(traceback.format_exc())
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    text = report.to_json()
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    logger.info(f"{args.command}: {'pass' if code == EXIT_PASS else 'FAIL'}")
    return code


if __name__ == '__main__':
    sys.exit(main())
