import csv
import hashlib
import json
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from core.forms import SuiteConfigForm
from core.models import VerificationRun
from core.services.report import report_bytes, write_report
from core.services.suite_runner import run_suite
from core.types import SUITE_ORDER, Check, CheckLedger, SuiteConfig, VerificationReport
from spectrum.services.io import read_coeffs

TESTDATA = Path(__file__).resolve().parent / 'testdata'
Z_CUBED = str(TESTDATA / 'z_cubed.csv')
BAD_ROW = str(TESTDATA / 'bad_row.csv')


def form_data(**overrides):
    data = {'suites': 'degree', 'seed': 0, 'grid': 256, 's': 0.25}
    data.update(overrides)
    return data


class SuiteConfigFormTests(SimpleTestCase):
    def test_suites_follow_fixed_order(self):
        form = SuiteConfigForm(form_data(suites='sweep, degree'))
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.to_config().suites, ('degree', 'sweep'))

    def test_all(self):
        form = SuiteConfigForm(form_data(suites='all'))
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.to_config().ordered_suites, list(SUITE_ORDER))

    def test_rejections(self):
        for overrides in (
            {'suites': 'degree,spin'},
            {'suites': ' , '},
            {'grid': 1000},
            {'bandwidth': 200},
            {'s': 1.0},
            {'seed': -1},
            {'input': '/no/such/file.csv'},
        ):
            self.assertFalse(SuiteConfigForm(form_data(**overrides)).is_valid(), overrides)


class ReportTests(SimpleTestCase):
    def make_report(self):
        ledger = CheckLedger('toy')
        ledger.add(Check.bound('toy.bound', 'toy.anchor', 1.0, 2.0))
        ledger.add(Check.bound('toy.broken', 'toy.anchor', 3.0, 2.0))
        ledger.add(Check.bound('toy.info', 'toy.anchor', 3.0, 2.0, gated=False))
        ledger.record('value', 0.1)
        return VerificationReport(SuiteConfig(suites=('degree',)), [ledger])

    def test_summary_counts(self):
        summary = self.make_report().summary()
        self.assertEqual(summary['total'], 3)
        self.assertEqual(summary['gated'], 2)
        self.assertEqual(summary['informational'], 1)
        self.assertEqual(summary['passed'], 1)
        self.assertEqual(summary['failed'], 1)
        self.assertFalse(summary['pass'])

    def test_floats_round_trip(self):
        payload = json.loads(report_bytes(self.make_report()))
        self.assertEqual(payload['suites'][0]['values']['value'], 0.1)
        self.assertEqual(payload['suites'][0]['checks'][1]['margin'], -1.0)

    def test_digest_matches_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'report.json'
            digest = write_report(self.make_report(), path)
            self.assertEqual(digest, hashlib.sha256(path.read_bytes()).hexdigest())

    def test_worker_count_does_not_change_report(self):
        reports = [
            report_bytes(run_suite(SuiteConfig(suites=('degree', 'kernel'), seed=5, grid=256, workers=workers))[0])
            for workers in (1, 4)
        ]
        self.assertEqual(reports[0], reports[1])


class SuiteRunnerTests(SimpleTestCase):
    def test_default_sizes_cover_acceptance_runs(self):
        self.assertGreaterEqual(settings.SUITE_DEGREE_MAPS, 100)
        self.assertGreaterEqual(settings.SUITE_HALF_MAPS, 20)
        self.assertGreaterEqual(settings.SUITE_NORM_MAPS, 10)
        self.assertGreaterEqual(settings.SUITE_ANALYTIC_PHASES, 20)
        self.assertTrue({64, 128, 256} <= set(settings.SUITE_KERNEL_SCALES))

    def test_degree_suite_runs_every_map(self):
        report, _ = run_suite(SuiteConfig(suites=('degree',), seed=3, grid=256))
        self.assertTrue(report.passed, [c.name for _, c in report.checks() if c.gated and not c.passed])
        self.assertEqual(len(report.ledgers[0].values['maps']), settings.SUITE_DEGREE_MAPS)

    @override_settings(SUITE_KERNEL_SCALES=[256, 64, 128])
    def test_kernel_stability_per_doubling(self):
        report, _ = run_suite(SuiteConfig(suites=('kernel',), seed=0, grid=256))
        decay = report.ledgers[0]
        stable = [c for c in decay.checks if c.name.startswith('kernel.decay-stable')]
        self.assertEqual(len(stable), 3 * 2)
        self.assertEqual(set(decay.values['fitted_c']['0.5']), {'64', '128', '256'})

    def test_norm_equivalence_on_ten_maps(self):
        report, _ = run_suite(SuiteConfig(suites=('norms',), seed=0, grid=512))
        ledger = report.ledgers[0]
        self.assertTrue(ledger.passed, [c.as_dict() for c in ledger.failures()])
        self.assertEqual(settings.SUITE_NORM_MAPS, 10)
        for s in ('0.25', '0.5', '0.75'):
            low, high = ledger.values['brackets'][s]
            self.assertGreater(low, 0)
            self.assertLessEqual(high / low, 50)
        self.assertEqual(len([c for c in ledger.checks if c.name.startswith('norms.bracket-width')]), 3)

    def test_every_app_has_a_logger(self):
        for app in ('spectrum', 'degree', 'norms', 'kernels', 'pipeline', 'blaschke', 'core'):
            self.assertIn(app, settings.LOGGING['loggers'])
            self.assertIn('console', settings.LOGGING['loggers'][app]['handlers'])


class CommandTests(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.out = Path(self.tmp.name)

    def test_degree_of_fixture(self):
        stdout = StringIO()
        call_command('degree', '--in', Z_CUBED, '--method', 'both', '--grid', '64', stdout=stdout)
        payload = json.loads(stdout.getvalue())
        self.assertEqual(payload['winding'], 3)
        self.assertEqual(payload['rounded'], 3)
        self.assertLess(payload['residual'], 1e-9)
        self.assertAlmostEqual(payload['spectral_sum'], 3.0, places=9)
        self.assertTrue(payload['agrees'])

    def test_parse_error_exits_with_two(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('degree', input=BAD_ROW, grid=64, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('bad_row.csv:2', str(ctx.exception))

    def test_unknown_suite_exits_with_two(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('suite', suites='spin', out=str(self.out), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_degree_suite_on_fixture(self):
        call_command('suite', suites='degree', input=Z_CUBED, grid=256, out=str(self.out), stdout=StringIO())
        report = json.loads((self.out / 'report.json').read_text())
        self.assertTrue(report['summary']['pass'])
        self.assertEqual(report['environment']['suites'], ['degree'])

    def test_identical_runs_give_identical_bytes(self):
        first, second = self.out / 'first', self.out / 'second'
        for out, workers in ((first, 1), (second, 4)):
            call_command('suite', suites='degree', seed=11, grid=256, out=str(out), workers=workers, stdout=StringIO())
        self.assertEqual((first / 'report.json').read_bytes(), (second / 'report.json').read_bytes())

    def test_sweep_suite_writes_csv(self):
        call_command('suite', suites='sweep', s=0.25, out=str(self.out), stdout=StringIO())
        with open(self.out / 'sweep.csv', newline='') as handle:
            rows = list(csv.DictReader(handle))
        self.assertGreaterEqual(len(rows), 18)
        main = [row for row in rows if row['conjugate'] == '0']
        self.assertTrue(all(row['gap_slope'] and row['k_slope'] for row in main))
        report = json.loads((self.out / 'report.json').read_text())
        self.assertEqual(report['artefacts']['sweep_csv'], 'sweep.csv')

    def test_save_stores_run(self):
        call_command('suite', suites='degree', input=Z_CUBED, grid=256, out=str(self.out), save=True, stdout=StringIO())
        run = VerificationRun.objects.get()
        data = (self.out / 'report.json').read_bytes()
        self.assertEqual(run.report_sha256, hashlib.sha256(data).hexdigest())
        self.assertEqual(run.checks.count(), json.loads(data)['summary']['total'])
        self.assertTrue(run.passed)
        self.assertFalse(run.failures().exists())

    def test_infeasible_growth_exits_with_one_after_writing(self):
        witness = self.out / 'witness.json'
        with self.assertRaises(CommandError) as ctx:
            call_command('blaschke', 'r1', weight='constant', stages=3, growth=1.5, out=str(witness), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertFalse(json.loads(witness.read_text())['success'])

    def test_blaschke_coefficients(self):
        path = self.out / 'factor.csv'
        call_command('blaschke', 'coeffs', zeros='0.5', bandwidth=8, out=str(path), stdout=StringIO())
        coeffs = read_coeffs(path)
        self.assertAlmostEqual(coeffs[0], 0.5, places=12)
        self.assertAlmostEqual(coeffs[1], -0.75, places=12)

    def test_counterexample_k_sweep(self):
        stdout = StringIO()
        call_command('counterexample', s=0.25, sweep='k', out=str(self.out / 'k.csv'), stdout=stdout)
        self.assertIn('k law', stdout.getvalue())
        self.assertTrue((self.out / 'k.csv').exists())

    def test_verify_half_case_on_sine(self):
        call_command('verify', case='half', grid=1024, amplitude=0.5, out=str(self.out / 'half.json'), stdout=StringIO())
        self.assertTrue(json.loads((self.out / 'half.json').read_text())['pass'])

    def test_verify_writes_report_flag(self):
        report = self.out / 'report.json'
        call_command(
            'verify', '--case', 'half', '--amplitude', '0.5', '--grid', '1024', '--report', str(report),
            stdout=StringIO(),
        )
        payload = json.loads(report.read_text())
        self.assertTrue(payload['pass'])
        self.assertTrue(all({'lhs', 'rhs', 'margin', 'pass'} <= set(check) for check in payload['checks']))

    def test_norm_spectral_form(self):
        stdout = StringIO()
        call_command(
            'norm', '--in', Z_CUBED, '--s', '0.5', '--side', 'two', '--form', 'spectral', '--grid', '64',
            stdout=stdout,
        )
        payload = json.loads(stdout.getvalue())
        self.assertEqual(set(payload), {'value', 'form', 'params'})
        self.assertEqual(payload['form'], 'spectral')
        self.assertAlmostEqual(payload['value'], 3.0, places=9)
        self.assertEqual(payload['params']['side'], 'two')

    def test_norm_truncated_and_integral_forms(self):
        stdout = StringIO()
        call_command('norm', '--in', Z_CUBED, '--s', '0.5', '--ncut', '2', '--grid', '64', stdout=stdout)
        capped = json.loads(stdout.getvalue())
        self.assertAlmostEqual(capped['value'], 2.0, places=9)
        self.assertEqual(capped['params']['n_cut'], 2)

        stdout = StringIO()
        call_command('norm', '--in', Z_CUBED, '--s', '0.25', '--form', 'integral', '--grid', '64', stdout=stdout)
        integral = json.loads(stdout.getvalue())
        self.assertEqual(integral['form'], 'integral')
        self.assertGreater(integral['value'], 0)
        self.assertEqual(integral['params']['n_cut'], 31)

    def test_norm_integral_form_is_two_sided(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('norm', '--in', Z_CUBED, '--s', '0.25', '--side', 'one', '--form', 'integral',
                         '--grid', '64', stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_kernel_grid_sets_table_size(self):
        path = self.out / 'kns.csv'
        call_command('kernel', '--N', '64', '--s', '0.75', '--grid', '2048', '--out', str(path), stdout=StringIO())
        with open(path, newline='') as handle:
            rows = list(csv.DictReader(handle))
        self.assertEqual(len(rows), 2048)
        self.assertEqual(set(rows[0]), {'t', 'K', 'majorant', 'ratio'})
        self.assertTrue(all(abs(float(row['K'])) <= float(row['majorant']) * (1 + 1e-12) for row in rows))

    def test_kernel_default_grid(self):
        stdout = StringIO()
        call_command('kernel', '--N', '8', '--s', '0.5', stdout=stdout)
        self.assertIn('points=128', stdout.getvalue())
