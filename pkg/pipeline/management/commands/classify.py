from pipeline.cli import KFanoCommand
from polyforms import SingularityTag, classify_singularity, format_poly, parse_poly


class Command(KFanoCommand):
    help = "Classify the double point at p = [0:0:0:1] of a quartic as A1, A2 or DEGENERATE"

    def add_arguments(self, parser):
        parser.add_argument("--surface", required=True, help="Quartic in x, y, z, w")

    def run(self, *args, **options):
        surface = parse_poly(options["surface"])
        classification = classify_singularity(surface)
        self.stdout.write(format_poly(surface))
        self.stdout.write(f"{classification.tag.value} (rank of f2: {classification.rank}): {classification.detail}")
        if classification.tag == SingularityTag.DEGENERATE:
            self.fail("degenerate double point")
