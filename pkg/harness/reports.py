"""
Verification reports and their JSON / Markdown renderings.

JSON is schema-stable and byte-identical across runs on the same inputs:
wall times are only written when timings=True.
"""
from dataclasses import dataclass, field

import orjson
from django.db import models
from django.utils.translation import gettext_lazy as _

JSON_OPTIONS = orjson.OPT_INDENT_2


class Verdict(models.TextChoices):
    PASS = 'PASS', _('Pass')
    FAIL = 'FAIL', _('Fail')
    SKIPPED = 'SKIPPED', _('Skipped')


class ReportFormat(models.TextChoices):
    JSON = 'json', _('JSON')
    MARKDOWN = 'md', _('Markdown')


@dataclass
class CheckRecord:
    check_id: str
    params: dict
    verdict: str
    reason: str = ''
    evidence: dict = field(default_factory=dict)
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self, timings=False):
        payload = {
            'check_id': self.check_id,
            'params': self.params,
            'verdict': str(self.verdict),
            'reason': self.reason,
            'evidence': self.evidence,
        }
        if timings:
            payload['wall_time'] = round(self.wall_time, 6)
        return payload

    @classmethod
    def from_dict(cls, payload):
        return cls(
            check_id=payload['check_id'],
            params=payload['params'],
            verdict=payload['verdict'],
            reason=payload.get('reason', ''),
            evidence=payload.get('evidence', {}),
            wall_time=payload.get('wall_time', 0.0),
        )


@dataclass
class VerificationReport:
    suite: str
    fingerprint: str
    checks: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def verdict(self):
        return Verdict.FAIL if any(c.verdict == Verdict.FAIL for c in self.checks) else Verdict.PASS

    @property
    def passed(self):
        return self.verdict == Verdict.PASS

    def counts(self):
        counts = {verdict: 0 for verdict in Verdict.values}
        for check in self.checks:
            counts[str(check.verdict)] += 1
        return counts

    def failures(self):
        return [check for check in self.checks if check.verdict == Verdict.FAIL]

    def to_dict(self, timings=False):
        return {
            'suite': self.suite,
            'fingerprint': self.fingerprint,
            'verdict': str(self.verdict),
            'counts': self.counts(),
            'checks': [check.to_dict(timings) for check in self.checks],
            'summary': self.summary,
        }

    @classmethod
    def from_dict(cls, payload):
        return cls(
            suite=payload['suite'],
            fingerprint=payload['fingerprint'],
            checks=[CheckRecord.from_dict(check) for check in payload['checks']],
            summary=payload.get('summary', {}),
        )


def emit_report(report, fmt=ReportFormat.JSON, timings=False):
    """Render a report as bytes (JSON) or text (Markdown)."""
    if fmt == ReportFormat.JSON:
        return orjson.dumps(report.to_dict(timings), option=JSON_OPTIONS) + b'\n'
    if fmt == ReportFormat.MARKDOWN:
        return render_markdown(report, timings)
    raise ValueError(f'unknown report format {fmt!r}')


def parse_report(raw):
    return VerificationReport.from_dict(orjson.loads(raw))


def _params_text(params):
    return ', '.join(f'{key}={value}' for key, value in params.items())


def render_markdown(report, timings=False):
    counts = report.counts()
    lines = [
        f'# Verification: {report.suite}',
        '',
        f'- fingerprint: `{report.fingerprint}`',
        f'- verdict: **{report.verdict}**',
        f'- checks: {counts["PASS"]} passed, {counts["FAIL"]} failed, {counts["SKIPPED"]} skipped',
        '',
        '| check | params | verdict | reason |' + (' time (s) |' if timings else ''),
        '|---|---|---|---|' + ('---|' if timings else ''),
    ]
    for check in report.checks:
        row = f'| {check.check_id} | {_params_text(check.params)} | {check.verdict} | {check.reason} |'
        if timings:
            row += f' {check.wall_time:.3f} |'
        lines.append(row)

    moduli = report.summary.get('moduli', [])
    if moduli:
        kinds = list(moduli[0]['moduli'])
        lines += ['', '## Shadowing moduli', '', '| epsilon | ' + ' | '.join(kinds) + ' |',
                  '|---|' + '---|' * len(kinds)]
        for row in moduli:
            lines.append(f'| {row["epsilon"]} | ' + ' | '.join(row['moduli'][kind] for kind in kinds) + ' |')

    radii = report.summary.get('radii', [])
    if radii:
        lines += ['', '## Expansivity radii', '', '| n | positive | two-sided | vacuous |', '|---|---|---|---|']
        for row in radii:
            lines.append(f'| {row["n"]} | {row["positive"]} | {row["two_sided"]} | {row["vacuous"]} |')

    eta = report.summary.get('eta')
    if eta:
        lines += ['', f'Trivial eta (every epsilon below it has singleton balls): {eta}']
    return '\n'.join(lines) + '\n'
