import json
import os

import pytest

from crossed_product.cli import COMMANDS, EXIT_FAIL, EXIT_INPUT, EXIT_PASS, main, run_command
from crossed_product.specfile import parse_spec

from .conftest import fixture_path


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_passes_for_car(capsys):
    code, out, _ = run(capsys, 'verify', fixture_path('car2.json'), '--degree', '3')
    assert code == EXIT_PASS
    report = json.loads(out)
    assert report['command'] == 'verify'
    assert report['pass'] is True
    assert report['inputs_digest'].startswith('sha256:')
    assert 'vacuum_normalization' in report['conventions']
    names = [c['name'] for c in report['checks']]
    assert names[:5] == ['left_unit', 'right_unit', 'left_module_cross', 'right_module_cross', 'combined_cross']


def test_verify_fails_for_broken_table(capsys):
    code, out, _ = run(capsys, 'verify', fixture_path('broken_cross.json'), '--degree', '3')
    assert code == EXIT_FAIL
    checks = {c['name']: c for c in json.loads(out)['checks']}
    witness = checks['right_module_cross']['witnesses'][0]
    assert (witness['b'], witness['a1'], witness['a2']) == ('y1', 'x1', 'x1')


def test_decimal_input_exits_with_input_error(capsys):
    code, out, err = run(capsys, 'gram', fixture_path('decimal.json'))
    assert code == EXIT_INPUT
    assert out == ''
    assert 'twist[0][4]' in err and '1/2' in err


def test_missing_file_is_an_input_error(capsys):
    code, _, err = run(capsys, 'verify', fixture_path('no_such_spec.json'))
    assert code == EXIT_INPUT
    assert 'cannot read' in err


def test_star_cross_command(capsys):
    assert run(capsys, 'star-cross', fixture_path('car2.json'))[0] == EXIT_PASS
    code, out, _ = run(capsys, 'star-cross', fixture_path('complex_q.json'))
    assert code == EXIT_FAIL
    assert json.loads(out)['results']['violations'] == 1


def test_gram_command_reports_matrix_and_kernel(capsys):
    code, out, _ = run(capsys, 'gram', fixture_path('car2.json'), '--degree', '2', '--psd')
    assert code == EXIT_PASS
    results = json.loads(out)['results']
    assert results['basis'] == ['x1 x1', 'x1 x2', 'x2 x1', 'x2 x2']
    assert results['matrix'][1] == ['0', '1', '-1', '0']
    assert results['kernel_dim'] == 3


def test_gram_reports_negative_norm_vector(capsys, tmp_path):
    spec = {
        'name': 'q-minus-two',
        'generators': {'A': ['x']},
        'pairing': True,
        'twist': [[1, 1, 1, 1, -2]],
    }
    path = tmp_path / 'spec.json'
    path.write_text(json.dumps(spec))
    code, out, _ = run(capsys, 'gram', str(path), '--degree', '2', '--psd')
    assert code == EXIT_FAIL
    witness = json.loads(out)['checks'][0]['witnesses'][0]
    assert witness == {'vector': 'x x', 'norm': '-1'}


def test_normal_form_command(capsys):
    code, out, _ = run(capsys, 'normal-form', fixture_path('car2.json'), '--poly', 'x1* x1')
    assert code == EXIT_PASS
    assert json.loads(out)['results']['normal_form'] == '1 - x1 x1*'


def test_dims_command(capsys):
    code, out, _ = run(capsys, 'dims', fixture_path('quantum_plane.json'), '--degree', '3')
    assert code == EXIT_PASS
    results = json.loads(out)['results']
    assert results['A'] == [1, 2, 3, 4]
    assert results['B'] == [1, 2, 3, 4]
    assert results['bidegree']['1,2'] == 6


def test_weyl_command(capsys):
    code, out, _ = run(capsys, 'weyl', '--q', '1/2')
    assert code == EXIT_PASS
    results = json.loads(out)['results']
    assert results['a_rules'] == ['x2 x1 -> 2 x1 x2']
    assert results['bidegree']['2,1'] == 6


def test_weyl_rejects_zero_parameter(capsys):
    assert run(capsys, 'weyl', '--q', '0')[0] == EXIT_INPUT


def test_consistency_command(capsys):
    ops = fixture_path('operators')
    code, out, _ = run(capsys, 'consistency', '--R', os.path.join(ops, 'R.json'),
                       '--S', os.path.join(ops, 'S.json'), '--C', os.path.join(ops, 'C.json'))
    assert code == EXIT_PASS
    assert json.loads(out)['results']['sufficient'] is True
    assert run(capsys, 'consistency', '--R', os.path.join(ops, 'R.json'))[0] == EXIT_INPUT


def test_reports_are_deterministic(capsys):
    args = ('adjoint', fixture_path('car2.json'), '--degree', '3')
    first_code, first_out, _ = run(capsys, *args)
    second_code, second_out, _ = run(capsys, *args)
    assert first_code == second_code == EXIT_PASS
    assert first_out == second_out


def test_run_command_without_the_parser():
    spec = parse_spec(fixture_path('qccr1.json'))
    report, code = run_command('wick-basis', spec, {'degree': 3})
    assert code == EXIT_PASS
    assert report.results['ordered_words']['1,1'] == 1


def test_malformed_literal_is_an_input_error(capsys):
    code, out, err = run(capsys, 'verify', fixture_path('malformed.json'))
    assert code == EXIT_INPUT
    assert out == ''
    assert "error: twist[0][4]: malformed rational '1.2.3'" in err


def test_dims_at_degree_zero(capsys):
    code, out, _ = run(capsys, 'dims', fixture_path('quantum_plane.json'), '--degree', '0')
    assert code == EXIT_PASS
    report = json.loads(out)
    assert report['results']['degree'] == 0
    assert report['results']['A'] == [1]
    assert report['results']['B'] == [1]
    assert report['results']['bidegree'] == {'0,0': 1}


def test_verify_rejects_degree_zero(capsys):
    code, out, err = run(capsys, 'verify', fixture_path('car2.json'), '--degree', '0')
    assert code == EXIT_INPUT
    assert out == ''
    assert 'degree must be at least 1, got 0' in err


def test_dims_compares_bidegrees_with_the_factors(capsys):
    code, out, _ = run(capsys, 'dims', fixture_path('quantum_plane.json'), '--degree', '2')
    assert code == EXIT_PASS
    checks = {c['name']: c for c in json.loads(out)['checks']}
    assert checks['bidegree_product']['pass'] is True
    assert checks['bidegree_product']['checked'] == 6
    assert checks['tau_ideal_a']['pass'] and checks['tau_ideal_b']['pass']


def test_weyl_reports_a_failed_hecke_relation(capsys):
    code, out, _ = run(capsys, 'weyl', '--R', fixture_path('operators', 'identity.json'), '--q', '2')
    assert code == EXIT_FAIL
    report = json.loads(out)
    assert report['pass'] is False
    assert report['checks'][0]['name'] == 'hecke'
    assert report['checks'][0]['witnesses'] == [{'message': 'hecke: (R - q)(R + 1/q) != 0 for q = 2'}]


def _golden_runs():
    with open(fixture_path('golden_runs.json'), 'r', encoding='utf-8') as handle:
        return json.load(handle)


def _golden_text(name, suffix):
    path = fixture_path('golden', f"{name}{suffix}")
    assert os.path.exists(path), f"golden file {path} is missing; run scripts/verify_fixtures.py --update"
    with open(path, 'r', encoding='utf-8') as handle:
        return handle.read()


def test_every_command_has_a_golden_report():
    runs = _golden_runs()
    assert {run['args'][0] for run in runs} == set(COMMANDS)
    assert {run['exit'] for run in runs} == {EXIT_PASS, EXIT_FAIL, EXIT_INPUT}


@pytest.mark.parametrize('fixture', _golden_runs(), ids=lambda run: run['name'])
def test_golden_reports(fixture, tmp_path, capsys):
    args = [fixture_path(a) if a.endswith('.json') else a for a in fixture['args']]
    output = tmp_path / 'report.json'
    code = main(args + ['--output', str(output)])
    err = capsys.readouterr().err
    assert code == fixture['exit']
    if code == EXIT_INPUT:
        assert not output.exists()
        errors = ''.join(f"{line}\n" for line in err.splitlines() if line.startswith('error: '))
        assert errors == _golden_text(fixture['name'], '.err')
    else:
        assert output.read_text(encoding='utf-8') == _golden_text(fixture['name'], '.json')
