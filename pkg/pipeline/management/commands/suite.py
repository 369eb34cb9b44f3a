from rest_framework.renderers import JSONRenderer

from pipeline.cli import KFanoCommand, optional_rational
from pipeline.serializers import SuiteSummarySerializer
from pipeline.suite import render_summary, run_paper_suite


class Command(KFanoCommand):
    help = "Recompute every published constant and compare exactly"

    def add_arguments(self, parser):
        parser.add_argument("--json", action="store_true", help="Machine-readable summary")
        parser.add_argument(
            "--perturb-c",
            help="Replace the coefficient 2/9 of the A2 pair, to watch the checks fail",
        )

    def run(self, *args, **options):
        summary = run_paper_suite(perturb_c=optional_rational(options["perturb_c"]))
        if options["json"]:
            data = SuiteSummarySerializer(summary).data
            self.emit(JSONRenderer().render(data, renderer_context={"indent": 2}) + b"\n")
        else:
            self.emit(render_summary(summary))
        if not summary.passed:
            self.fail(f"{summary.failures} of {summary.total} cases failed")
