from pathlib import Path

from django.conf import settings
from django.core.management.base import CommandError
from django.db.utils import OperationalError

from pipeline.certify import CertificationOptions, certify, emit_report
from pipeline.cli import CHECK_FAILED, KFanoCommand, optional_rational
from pipeline.models import CertificationRun


class Command(KFanoCommand):
    help = "Certify K-semistability of (Y, c*S) for a quartic S with a double point at p = [0:0:0:1]"

    def add_arguments(self, parser):
        parser.add_argument("--surface", required=True, help="Quartic in x, y, z, w")
        parser.add_argument("--c", help='Override the coefficient, e.g. "1/4"')
        parser.add_argument("--generic-s", help="Parameter of the generic T_s divisor (default 2)")
        parser.add_argument("--format", choices=["json", "text"], default="json")
        parser.add_argument("--out", help="Write the report to this path instead of stdout")
        parser.add_argument(
            "--allow-singular",
            action="store_true",
            help="Record that S may be singular away from p; computations are unchanged",
        )
        parser.add_argument("--serial", action="store_true", help="Run the invariant computations serially")
        parser.add_argument("--save", action="store_true", help="Store the report in the run history")

    def run(self, *args, **options):
        cert_options = CertificationOptions.from_settings(
            c=optional_rational(options["c"]),
            generic_s=optional_rational(options["generic_s"]),
            allow_singular=options["allow_singular"],
            concurrent=False if options["serial"] else None,
        )
        report = certify(options["surface"], cert_options)
        payload = emit_report(report, options["format"])

        if options["out"]:
            Path(options["out"]).write_bytes(payload)
            self.stdout.write(f"Report written to {options['out']}")
        else:
            self.emit(payload)

        if options["save"] or settings.KFANO.get("PERSIST_RUNS"):
            try:
                run = CertificationRun.record(report)
            except OperationalError as exc:
                raise CommandError(
                    f"cannot store the run ({exc}); run `kfano migrate` first",
                    returncode=CHECK_FAILED,
                ) from exc
            self.stderr.write(f"Stored run {run.uuid}")

        if not report.certified:
            self.fail(f"verdict: {report.verdict.value}")
