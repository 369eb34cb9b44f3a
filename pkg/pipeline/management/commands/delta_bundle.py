from rest_framework.renderers import JSONRenderer

from bundle_delta import BundleDeltaInput, delta_bundle
from exactnum import as_rational, format_rational
from pipeline.cli import KFanoCommand
from pipeline.serializers import DeltaBreakdownSerializer


class Command(KFanoCommand):
    help = "Stability threshold of a P^1-bundle over a log Fano base"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Dimension of the base")
        parser.add_argument("--r", required=True, help="L ~ -(K_V + Delta)/r")
        parser.add_argument("--a", required=True, help="Coefficient of the zero section")
        parser.add_argument("--b", required=True, help="Coefficient of the infinity section")
        parser.add_argument("--delta-base", required=True, help="delta of the base pair")
        parser.add_argument("--json", action="store_true")

    def run(self, *args, **options):
        inp = BundleDeltaInput(
            n=options["n"],
            r=as_rational(options["r"]),
            a=as_rational(options["a"]),
            b=as_rational(options["b"]),
            delta_base=as_rational(options["delta_base"]),
        )
        breakdown = delta_bundle(inp)
        if options["json"]:
            data = DeltaBreakdownSerializer(breakdown).data
            self.emit(JSONRenderer().render(data, renderer_context={"indent": 2}) + b"\n")
            return
        self.stdout.write(f"A = {format_rational(inp.A)}, B = {format_rational(inp.B)}")
        self.stdout.write(f"M = {format_rational(breakdown.mean_M)}")
        self.stdout.write(f"base term = {format_rational(breakdown.term_base)}")
        self.stdout.write(f"zero section term = {format_rational(breakdown.term_zero)}")
        self.stdout.write(f"infinity section term = {format_rational(breakdown.term_infty)}")
        self.stdout.write(f"delta = {format_rational(breakdown.delta)}")
