# Generated by Django 5.1.5 on 2026-10-17 09:12

import django.utils.timezone
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="CertificationRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "uuid",
                    models.UUIDField(default=uuid.uuid4, editable=False, unique=True),
                ),
                (
                    "input_surface",
                    models.TextField(help_text="Canonical text of the quartic"),
                ),
                (
                    "subfamily",
                    models.CharField(help_text="A1, A2 or DEGENERATE", max_length=20),
                ),
                ("verdict", models.CharField(max_length=40)),
                (
                    "chosen_c",
                    models.CharField(
                        blank=True, help_text='Coefficient as "p/q"', max_length=50
                    ),
                ),
                (
                    "report",
                    models.JSONField(help_text="Serialized certification report"),
                ),
                (
                    "created_at",
                    models.DateTimeField(default=django.utils.timezone.now),
                ),
            ],
            options={
                "db_table": "certification_runs",
                "ordering": ["-created_at"],
                "indexes": [
                    models.Index(
                        fields=["verdict", "-created_at"],
                        name="certification_verdict_idx",
                    )
                ],
            },
        ),
    ]
