from exactnum import as_rational, format_rational
from pipeline.cli import KFanoCommand, optional_rational, rational_triple
from valuations import (
    SlabPolytope,
    integral_linear_over_slab,
    scaling_check,
    slice_volume,
    slice_volume_function,
)


class Command(KFanoCommand):
    help = "Slice volumes of the slab m <= u0 + u1 + u2 <= d cut by a linear functional"

    def add_arguments(self, parser):
        parser.add_argument("--d", required=True, help="Outer simplex scale")
        parser.add_argument("--m", required=True, help="Inner simplex scale")
        parser.add_argument("--weights", required=True, help="Functional coefficients, e.g. 3,0,1")
        parser.add_argument("--t", help="Slice level; without it the whole volume function is printed")

    def run(self, *args, **options):
        slab = SlabPolytope(as_rational(options["d"]), as_rational(options["m"]), rational_triple(options["weights"]))
        t = optional_rational(options["t"])
        ell = ",".join(str(c) for c in slab.ell)
        self.stdout.write(f"slab d = {slab.d}, m = {slab.m}, ell = ({ell})")
        self.stdout.write(f"volume = {format_rational(slab.euclidean_volume)}")
        self.stdout.write(f"max ell = {format_rational(slab.max_functional)}")
        if t is None:
            if slab.max_functional > 0:
                self.stdout.write(f"slice volume: {slice_volume_function(slab)}")
            self.stdout.write(f"integral of ell = {format_rational(integral_linear_over_slab(slab))}")
            return
        self.stdout.write(f"slice volume at t = {t}: {format_rational(slice_volume(slab, t))}")
        if slab.m > 0:
            direct, scaled = scaling_check(slab.d, slab.m, t, slab.ell)
            self.stdout.write(f"scaling check: {format_rational(direct)} vs {format_rational(scaled)}")
            if direct != scaled:
                self.fail("scaling identity does not hold")
