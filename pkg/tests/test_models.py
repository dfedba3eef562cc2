import json

from crossed_product.config import conventions
from crossed_product.models import CheckResult, Report, VerificationReport
from crossed_product.utils.helpers import compute_digest


def test_report_passes_only_when_every_check_passes():
    report = VerificationReport([CheckResult('a', True, [], 3)])
    assert report.passed
    report.extend(CheckResult('b', False, [{'word': 'x1'}], 1))
    assert not report
    assert report.violations == [{'word': 'x1', 'check': 'b'}]
    assert report.check('a').checked == 3
    assert report.check('missing') is None


def test_report_json_is_sorted_and_reloadable():
    report = Report(
        command='verify',
        inputs_digest=compute_digest({'b': 1, 'a': 2}),
        conventions=conventions(),
        checks=[CheckResult('left_unit', True, [], 4)],
        results={'degree': 2},
    )
    text = report.to_json()
    assert text.endswith('\n')
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data['pass'] is True
    assert Report.from_dict(data) == report


def test_digest_ignores_key_order():
    assert compute_digest({'a': 1, 'b': [1, 2]}) == compute_digest({'b': [1, 2], 'a': 1})
    assert compute_digest({'a': 1}) != compute_digest({'a': 2})
    assert compute_digest({'a': 1}).startswith('sha256:')
