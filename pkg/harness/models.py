"""
Verification archive: one row per stored suite run.
"""
from django.db import models
from django.utils.translation import gettext_lazy as _

from .base import TimestampedModel


class RunVerdict(models.TextChoices):
    PASS = 'PASS', _('Pass')
    FAIL = 'FAIL', _('Fail')


class VerificationRunQuerySet(models.QuerySet):
    def for_fingerprint(self, fingerprint):
        """Prior runs against the exact same system document, newest first."""
        return self.filter(fingerprint=fingerprint).order_by('-created_at')

    def failed(self):
        return self.filter(verdict=RunVerdict.FAIL)


class VerificationRun(TimestampedModel):
    suite = models.CharField(
        _('suite'),
        max_length=100,
        help_text=_('Suite names joined by commas')
    )
    fingerprint = models.CharField(
        _('fingerprint'),
        max_length=64,
        db_index=True,
        help_text=_('SHA-256 of the canonical system document')
    )
    system_label = models.CharField(
        _('system label'),
        max_length=255,
        blank=True,
        help_text=_('Generator name or file the system came from')
    )
    verdict = models.CharField(
        _('verdict'),
        max_length=10,
        choices=RunVerdict.choices,
    )
    passed = models.PositiveIntegerField(_('passed checks'), default=0)
    failed_count = models.PositiveIntegerField(_('failed checks'), default=0)
    skipped = models.PositiveIntegerField(_('skipped checks'), default=0)
    payload = models.JSONField(
        _('payload'),
        help_text=_('Schema-stable JSON report')
    )

    objects = VerificationRunQuerySet.as_manager()

    class Meta(TimestampedModel.Meta):
        verbose_name = _('Verification run')
        verbose_name_plural = _('Verification runs')

    def __str__(self):
        return f"{self.suite} on {self.fingerprint[:12]}: {self.verdict}"

    @classmethod
    def record(cls, report, system_label=''):
        """Store a VerificationReport."""
        counts = report.counts()
        return cls.objects.create(
            suite=report.suite,
            fingerprint=report.fingerprint,
            system_label=system_label,
            verdict=RunVerdict.FAIL if counts['FAIL'] else RunVerdict.PASS,
            passed=counts['PASS'],
            failed_count=counts['FAIL'],
            skipped=counts['SKIPPED'],
            payload=report.to_dict(),
        )
