from pathlib import Path

from django.conf import settings
from django.core.management.base import CommandError

from core.forms import SuiteConfigForm
from core.management.base import BAD_INPUT, CircleMapsCommand
from core.models import VerificationRun
from core.services.report import write_outputs
from core.services.suite_runner import run_suite


class Command(CircleMapsCommand):
    help = "Run verification suites in fixed order and write report.json (and sweep.csv) to --out"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--suites', default='all')
        parser.add_argument('--s', type=float, default=0.25)
        parser.add_argument('--in', '--input', default=None, dest='input', help="Map file for the degree suite")
        parser.add_argument('--save', action='store_true', help="Also store the run in the report history tables")

    def run(self, suites, seed, grid, bandwidth, s, input, out, workers, save, **options):
        form = SuiteConfigForm({
            'suites': suites, 'seed': seed, 'grid': grid, 'bandwidth': bandwidth,
            's': s, 'input': input or '', 'out': out or '', 'workers': workers,
        })
        if not form.is_valid():
            raise CommandError(form.errors.as_text(), returncode=BAD_INPUT)
        cfg = form.to_config()

        report, tables = run_suite(cfg)
        out_dir = Path(cfg.out) if cfg.out else settings.REPORTS_DIR / f'seed-{cfg.seed}'
        path, digest = write_outputs(report, tables, out_dir)
        summary = report.summary()
        self.stdout.write(
            f"{summary['passed']}/{summary['gated']} gated checks passed "
            f"({summary['informational']} informational); report {path} sha256 {digest}"
        )
        if save:
            run = VerificationRun.record(report, path, digest)
            self.stdout.write(f"saved as run {run.pk}")
        self.fail_on(report.ledgers, path)
