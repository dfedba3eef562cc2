#!/usr/bin/env python3
"""
Regenerate or check the golden files under tests/fixtures/golden.
Each run in tests/fixtures/golden_runs.json is executed through the CLI
and its report (or, for input errors, its error lines) compared byte for
byte with the stored copy. The exit code must match the manifest.
"""
import contextlib
import io
import os
import sys
import json
import argparse
import tempfile
from dotenv import load_dotenv

# Add the parent directory to the path so we can import the package
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from crossed_product.cli import EXIT_INPUT, main as cli_main
from crossed_product.config import setup_logging

FIXTURES_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'tests', 'fixtures'))
GOLDEN_DIR = os.path.join(FIXTURES_DIR, 'golden')

# Load environment variables
load_dotenv()


def parse_args():
    """Parse command line arguments"""
    parser = argparse.ArgumentParser(description='Check or regenerate golden verification reports')
    parser.add_argument('--update', help='rewrite the golden reports', action='store_true')
    parser.add_argument('--only', help='run a single fixture by name', default=None)
    return parser.parse_args()


def load_runs():
    with open(os.path.join(FIXTURES_DIR, 'golden_runs.json'), 'r', encoding='utf-8') as handle:
        return json.load(handle)


def resolve_args(args):
    """Turn fixture relative file arguments into absolute paths"""
    resolved = []
    for arg in args:
        candidate = os.path.join(FIXTURES_DIR, arg)
        resolved.append(candidate if arg.endswith('.json') and os.path.exists(candidate) else arg)
    return resolved


def run_fixture(run, output_path):
    """
    Run one fixture through the CLI.

    Returns:
        tuple: (exit code, text to compare): the report for exit codes 0 and
            1, the 'error:' lines of stderr for input errors
    """
    errors = io.StringIO()
    with contextlib.redirect_stderr(errors):
        code = cli_main(resolve_args(run['args']) + ['--output', output_path])
    if code == EXIT_INPUT:
        lines = [line for line in errors.getvalue().splitlines() if line.startswith('error: ')]
        return code, ''.join(f"{line}\n" for line in lines)
    with open(output_path, 'r', encoding='utf-8') as handle:
        return code, handle.read()


def golden_path(run):
    suffix = '.err' if run['exit'] == EXIT_INPUT else '.json'
    return os.path.join(GOLDEN_DIR, f"{run['name']}{suffix}")


def verify_fixtures(update=False, only=None):
    """Check every golden file; returns the number of mismatches"""
    logger = setup_logging('verify_fixtures')
    os.makedirs(GOLDEN_DIR, exist_ok=True)
    mismatches = 0

    for run in load_runs():
        if only and run['name'] != only:
            continue
        path = golden_path(run)

        with tempfile.TemporaryDirectory() as tmp:
            code, produced = run_fixture(run, os.path.join(tmp, 'report.json'))

        if code != run['exit']:
            logger.error(f"{run['name']} exited with {code}, expected {run['exit']}")
            mismatches += 1
            continue

        if update:
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write(produced)
            logger.info(f"Wrote {path}")
            continue

        if not os.path.exists(path):
            logger.error(f"No golden file for {run['name']}; run with --update")
            mismatches += 1
            continue

        with open(path, 'r', encoding='utf-8') as handle:
            expected = handle.read()

        if produced != expected:
            logger.error(f"Output for {run['name']} differs from {path}")
            mismatches += 1
        else:
            logger.info(f"{run['name']}: ok")

    logger.info(f"Fixture check complete: {mismatches} mismatches")
    return mismatches


if __name__ == '__main__':
    args = parse_args()
    try:
        failed = verify_fixtures(update=args.update, only=args.only)
        sys.exit(0 if failed == 0 else 1)
    except Exception as e:
        print(f"Error verifying fixtures: {str(e)}")
        sys.exit(1)
