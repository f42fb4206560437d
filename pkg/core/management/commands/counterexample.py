from blaschke.services.sweeps import scaling_sweep, sweep_ledger
from core.management.base import CircleMapsCommand
from core.services.report import write_sweep_csv
from core.services.suite_runner import SWEEP_A

K_GRID = [2, 4, 8, 16, 32, 64]


class Command(CircleMapsCommand):
    help = "Sweep the Moebius counterexample family over a or k and fit the scaling laws"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--s', type=float, required=True)
        parser.add_argument('--sweep', choices=['a', 'k'], default='a')
        parser.add_argument('--k', type=int, default=8, help="Fixed k of an a-sweep")
        parser.add_argument('--a', type=float, default=0.9, help="Fixed a of a k-sweep")
        parser.add_argument('--conjugate', action='store_true')

    def run(self, s, sweep, k, a, conjugate, out, workers, **options):
        if sweep == 'a':
            table = scaling_sweep(s, SWEEP_A, [k], conjugate=conjugate, workers=workers)
        else:
            table = scaling_sweep(s, [a], K_GRID, conjugate=conjugate, workers=workers)
        if out:
            write_sweep_csv([table], out)
        for fit in table.fits:
            self.stdout.write(
                f"{fit['law']} law at {fit['param']}: slope {fit['slope']:.4f} (target {fit['target']:.4f})"
            )
        self.fail_on([sweep_ledger(table)], out)
