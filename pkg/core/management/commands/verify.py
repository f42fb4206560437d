import numpy as np

from core.management.base import CircleMapsCommand
from pipeline.services.half_case import verify_half_case
from pipeline.services.small_case import verify_small_case
from pipeline.services.vmo import vmo_entry
from spectrum.services.generators import make_rng
from spectrum.services.io import read_map
from spectrum.types import UnimodularSamples


class Command(CircleMapsCommand):
    help = "Run the s = 1/2, small-argument or VMO verification chain on one map"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--case', choices=['half', 'small', 'vmo'], required=True)
        parser.add_argument('--in', default=None, dest='input', help="Map file; without it the phase a*sin(t) is used")
        parser.add_argument('--report', default=None, help="Report path; falls back to --out, then stdout")
        parser.add_argument('--amplitude', type=float, default=0.3)
        parser.add_argument('--s', type=float, default=0.25)

    def run(self, case, input, report, amplitude, s, grid, seed, out, workers, **options):
        report = report or out
        if input:
            f = UnimodularSamples(read_map(input, grid))
        else:
            f = UnimodularSamples.from_phase(amplitude * np.sin(2 * np.pi * np.arange(grid) / grid))
        rng = make_rng(seed)
        if case == 'half':
            ledger = verify_half_case(f, workers=workers)
        elif case == 'small':
            ledger = verify_small_case(f, s, workers=workers, rng=rng)
        else:
            ledger = vmo_entry(f, s=s, workers=workers, rng=rng)
        self.emit(ledger.as_dict(), report)
        self.fail_on([ledger], report)
