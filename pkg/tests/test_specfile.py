import json

import pytest

from crossed_product.core import ALPHABET_A, ALPHABET_B, Scalar
from crossed_product.errors import SpecError
from crossed_product.specfile import parse_spec, parse_spec_data, parse_spec_text, serialize_spec
from crossed_product.wick import WickSpec

from .conftest import fixture_path, poly, xw, yw

GOOD_FIXTURES = ['car2.json', 'qccr1.json', 'qccr2.json', 'complex_q.json', 'broken_cross.json', 'quantum_plane.json']


def test_car_spec_builds_the_car_algebra():
    spec = parse_spec(fixture_path('car2.json'))
    assert spec.b_names == ('x1*', 'x2*')
    assert spec.wick_spec() == WickSpec.car(2)


def test_parameters_are_substituted():
    spec = parse_spec(fixture_path('qccr2.json'))
    assert spec.parameters == {'q': Scalar.parse('-1/2')}
    assert spec.twist.coefficient(1, 2, 2, 1) == Scalar.parse('-1/2')


def test_decimal_values_are_rejected_with_their_position():
    with pytest.raises(SpecError) as excinfo:
        parse_spec(fixture_path('decimal.json'))
    message = str(excinfo.value)
    assert 'twist[0][4]' in message
    assert '1/2' in message


def test_non_hermitian_twist_needs_an_explicit_opt_out():
    with pytest.raises(SpecError) as excinfo:
        parse_spec(fixture_path('complex_q_checked.json'))
    assert 'hermitian' in str(excinfo.value)
    spec = parse_spec(fixture_path('complex_q.json'))
    assert not spec.hermitian
    assert spec.wick_spec().dim == 1


def test_every_problem_is_reported():
    data = {
        'generators': {'A': ['x1', 'x2']},
        'twist': [[1, 1, 1, 1, 'z'], [3, 1, 1, 1, 1], [1, 1, 1, 1, 1]],
        'pairing': 'yes',
        'colour': 1,
    }
    with pytest.raises(SpecError) as excinfo:
        parse_spec_data(data)
    errors = excinfo.value.errors
    assert any(e.startswith('colour') for e in errors)
    assert any(e.startswith('twist[0][4]') for e in errors)
    assert any(e.startswith('twist[1]') and 'out of range' in e for e in errors)
    assert any(e.startswith('pairing') for e in errors)


def test_unknown_generator_in_override():
    data = {
        'generators': {'A': ['x'], 'B': ['y']},
        'twist': [[1, 1, 1, 1, 1]],
        'overrides': [{'b': 'y', 'a': 'z', 'value': [['1', 'x y']]}],
    }
    with pytest.raises(SpecError) as excinfo:
        parse_spec_data(data)
    assert "overrides[0].a: unknown generator 'z'" in str(excinfo.value)


def test_invalid_json_reports_the_line():
    with pytest.raises(SpecError) as excinfo:
        parse_spec_text('{\n  "name": \n}')
    assert 'line' in str(excinfo.value)


def test_relations_and_declared_order():
    spec = parse_spec(fixture_path('quantum_plane.json'))
    a = spec.algebra(ALPHABET_A)
    b = spec.algebra(ALPHABET_B)
    assert a.rewrite.rules == ((xw(2, 1), poly((2, xw(1, 2)))),)
    assert b.rewrite.order == (2, 1)
    assert b.rewrite.rules == ((yw(1, 2), poly((Scalar.parse('1/2'), yw(2, 1)))),)


def test_polynomial_text_uses_spec_names():
    spec = parse_spec(fixture_path('car2.json'))
    p = spec.parse_poly("x1* x1 - 2 x2 + (1/2+i) x1 x2*")
    assert p == poly((1, yw(1) * xw(1)), (-2, xw(2)), (Scalar.parse('1/2+i'), xw(1) * yw(2)))
    assert spec.format_poly(p) == '-2 x2 + (1/2+i) x1 x2* + x1* x1'


@pytest.mark.parametrize('name', GOOD_FIXTURES)
def test_serialized_spec_reparses_to_the_same_spec(name):
    spec = parse_spec(fixture_path(name))
    text = serialize_spec(spec)
    assert parse_spec_text(text) == spec
    assert serialize_spec(parse_spec_text(text)) == text


@pytest.mark.parametrize('value', ['1.2.3', '.', '1.2.3 i', '-.'])
def test_malformed_decimal_literals_are_spec_errors(value):
    data = {'generators': {'A': ['x']}, 'twist': [[1, 1, 1, 1, value]]}
    with pytest.raises(SpecError) as excinfo:
        parse_spec_data(data)
    assert any(e.startswith('twist[0][4]') and 'malformed rational' in e for e in excinfo.value.errors)


@pytest.mark.parametrize('value', [float('nan'), float('inf')])
def test_non_finite_floats_are_spec_errors(value):
    data = {'generators': {'A': ['x']}, 'twist': [[1, 1, 1, 1, value]]}
    with pytest.raises(SpecError) as excinfo:
        parse_spec_data(data)
    assert any(e.startswith('twist[0][4]') for e in excinfo.value.errors)
