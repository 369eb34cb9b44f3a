import uuid

from django.db import models
from django.utils import timezone

from exactnum import format_rational

from .serializers import CertificationReportSerializer


class CertificationRun(models.Model):
    """A stored certification report"""

    uuid = models.UUIDField(default=uuid.uuid4, editable=False, unique=True)
    input_surface = models.TextField(help_text="Canonical text of the quartic")
    subfamily = models.CharField(max_length=20, help_text="A1, A2 or DEGENERATE")
    verdict = models.CharField(max_length=40)
    chosen_c = models.CharField(max_length=50, blank=True, help_text='Coefficient as "p/q"')
    report = models.JSONField(help_text="Serialized certification report")
    created_at = models.DateTimeField(default=timezone.now)

    class Meta:
        db_table = 'certification_runs'
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['verdict', '-created_at'], name='certification_verdict_idx'),
        ]

    def __str__(self):
        return f"{self.input_surface} [{self.subfamily}] -> {self.verdict}"

    @classmethod
    def record(cls, report):
        return cls.objects.create(
            input_surface=report.input_surface,
            subfamily=report.subfamily.value,
            verdict=report.verdict.value,
            chosen_c='' if report.chosen_c is None else format_rational(report.chosen_c),
            report=CertificationReportSerializer(report).data,
        )

    def to_report(self):
        serializer = CertificationReportSerializer(data=self.report)
        serializer.is_valid(raise_exception=True)
        return serializer.save()
