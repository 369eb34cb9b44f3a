from django.core.management.base import CommandError
from django.db.utils import OperationalError

from pipeline.cli import CHECK_FAILED, KFanoCommand
from pipeline.models import CertificationRun


class Command(KFanoCommand):
    help = "List stored certification runs, newest first"

    def add_arguments(self, parser):
        parser.add_argument("--limit", type=int, default=20)

    def run(self, *args, **options):
        try:
            runs = list(CertificationRun.objects.all()[:options["limit"]])
        except OperationalError as exc:
            raise CommandError(f"no run history ({exc}); run `kfano migrate` first", returncode=CHECK_FAILED) from exc
        if not runs:
            self.stdout.write("No stored runs.")
            return
        for run in runs:
            c = run.chosen_c or "-"
            self.stdout.write(
                f"{run.created_at:%Y-%m-%d %H:%M:%S} {run.uuid} {run.verdict} {run.subfamily} c={c} {run.input_surface}"
            )
