"""
Report models for verification results
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CheckResult:
    """Outcome of one named check"""
    name: str
    passed: bool
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    checked: int = 0

    def __bool__(self):
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'pass': self.passed,
            'checked': self.checked,
            'witnesses': self.witnesses,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CheckResult':
        """Create a CheckResult from a report dictionary"""
        if not data:
            return None
        return cls(
            name=data.get('name'),
            passed=bool(data.get('pass', False)),
            witnesses=list(data.get('witnesses') or []),
            checked=data.get('checked', 0),
        )


@dataclass
class VerificationReport:
    """A group of checks; passes when every check passes"""
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def __bool__(self):
        return self.passed

    def check(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)

    @property
    def violations(self) -> List[Dict[str, Any]]:
        return [
            dict(witness, check=check.name)
            for check in self.checks if not check.passed
            for witness in check.witnesses
        ]

    def extend(self, other) -> 'VerificationReport':
        if isinstance(other, CheckResult):
            self.checks.append(other)
        else:
            self.checks.extend(other.checks)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {'pass': self.passed, 'checks': [c.to_dict() for c in self.checks]}


@dataclass
class Report:
    """Machine readable result of one CLI command"""
    command: str
    inputs_digest: str
    conventions: Dict[str, str]
    checks: List[CheckResult] = field(default_factory=list)
    results: Dict[str, Any] = field(default_factory=dict)
    schema_version: int = 1

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema_version': self.schema_version,
            'command': self.command,
            'inputs_digest': self.inputs_digest,
            'pass': self.passed,
            'checks': [c.to_dict() for c in self.checks],
            'results': self.results,
            'conventions': self.conventions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=True) + '\n'

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Report':
        if not data:
            return None
        return cls(
            command=data.get('command'),
            inputs_digest=data.get('inputs_digest', ''),
            conventions=dict(data.get('conventions') or {}),
            checks=[CheckResult.from_dict(c) for c in data.get('checks') or []],
            results=dict(data.get('results') or {}),
            schema_version=data.get('schema_version', 1),
        )
