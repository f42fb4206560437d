from core.management.base import CircleMapsCommand
from core.services.report import write_table
from kernels.services.kernel_table import default_grid, kns_table
from kernels.types import KernelSpec
from spectrum.exceptions import PreconditionError


class Command(CircleMapsCommand):
    help = "Tabulate K_{N,s} against its decay envelope and report the fitted constant"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--N', type=int, required=True, dest='scale')
        parser.add_argument('--s', type=float, required=True)
        # --grid counts t-points here; without it the table uses 16N of them
        parser.set_defaults(grid=None)

    def run(self, scale, s, grid, out, workers, **options):
        if grid is not None and grid < 1:
            raise PreconditionError(f"kernel grid needs at least one point, got {grid}")
        t = None if grid is None else default_grid(grid)
        table = kns_table(KernelSpec(N=scale, s=s), grid=t, workers=workers)
        if out:
            rows = [{'t': x, 'K': k, 'majorant': m, 'ratio': r} for x, k, m, r in table.rows()]
            write_table(rows, ['t', 'K', 'majorant', 'ratio'], out)
        self.stdout.write(f"N={scale} s={s:g} points={table.t.size} fitted c={table.fitted_c:.17g}")
