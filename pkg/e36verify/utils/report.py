import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, NamedTuple, Union

import pandas as pd
from tabulate import tabulate

STATUSES = ('pass', 'fail', 'window-limited')
FORMATS = ('json', 'md')
COLUMNS = ['id', 'claim', 'status', 'expected', 'computed', 'residual']


class Check(NamedTuple):
    id: str
    claim: str
    status: str
    expected: str
    computed: str
    residual: str = ''


def exact(value) -> str:
    """Exact string form: integers and num/den fractions, containers rendered recursively."""
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    if isinstance(value, Mapping):
        items = sorted(value.items(), key=lambda kv: repr(kv[0]))
        return '{' + ', '.join(f"{exact(k)}: {exact(v)}" for k, v in items) + '}'
    if isinstance(value, (list, tuple)):
        return '[' + ', '.join(exact(v) for v in value) + ']'
    return str(value)


def check(id: str, claim: str, expected, computed, residual: str = '', window_limited: bool = False) -> Check:
    expected, computed = exact(expected), exact(computed)
    if expected == computed:
        status = 'pass'
    else:
        status = 'window-limited' if window_limited else 'fail'
        if not residual and status == 'fail':
            residual = f"expected {expected}, computed {computed}"
    return Check(id, claim, status, expected, computed, residual)


@dataclass
class Report:
    suite: str
    config: Dict[str, object] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def summary(self) -> Dict[str, int]:
        counts = {status: 0 for status in STATUSES}
        for c in self.checks:
            counts[c.status] += 1
        counts['total'] = len(self.checks)
        return counts

    @property
    def failed(self) -> List[Check]:
        return [c for c in self.checks if c.status == 'fail']


def report_frame(report: Report) -> pd.DataFrame:
    return pd.DataFrame([c._asdict() for c in report.checks], columns=COLUMNS)


def _as_document(report: Report) -> Dict[str, object]:
    return {
        'suite': report.suite,
        'config': {k: exact(v) if v is not None else None for k, v in report.config.items()},
        'checks': [c._asdict() for c in report.checks],
        'summary': report.summary,
    }


def emit_report(report: Report, fmt: str = 'md') -> bytes:
    if fmt not in FORMATS:
        raise ValueError(f"unknown report format {fmt!r}, expected one of {FORMATS}")
    if fmt == 'json':
        return (json.dumps(_as_document(report), indent=2, sort_keys=True) + '\n').encode()

    lines = [f"# e36verify report: {report.suite}", '']
    config = ', '.join(f"{k}={v}" for k, v in sorted(report.config.items()))
    lines += [f"Configuration: {config}", '']
    if report.checks:
        frame = report_frame(report).drop(columns=['residual'])
        lines.append(tabulate(frame, headers='keys', tablefmt='github', showindex=False))
    else:
        lines.append('No checks were run.')
    lines.append('')
    summary = report.summary
    lines.append(f"{summary['pass']} passed, {summary['fail']} failed, "
                 f"{summary['window-limited']} window-limited of {summary['total']} checks "
                 f"in {report.elapsed:.1f}s")
    for c in report.failed:
        lines += ['', f"## {c.id}", '', c.residual]
    return ('\n'.join(lines) + '\n').encode()


def load_report(path: Union[str, Path]) -> Report:
    """Read a JSON report written by ``emit_report``."""
    with open(path, 'r') as f:
        document = json.load(f)
    checks = [Check(**{k: c.get(k, '') for k in COLUMNS}) for c in document.get('checks', [])]
    logging.debug(f"Loaded {len(checks)} checks from {path}")
    return Report(document.get('suite', ''), document.get('config', {}), checks)
