import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError

from degree.services.winding import phase_lift
from kernels.services.kernel_table import default_grid, kernel_values, kns_table
from kernels.services.profile import delta_ns, gs_eval, gs_integral
from kernels.services.sums import jn_bound_check, truncated_energy_check, weight_sums
from kernels.types import KernelSpec
from spectrum.exceptions import PreconditionError
from spectrum.services.generators import make_rng, random_coeffs
from spectrum.services.transforms import analyze
from spectrum.types import CircleSamples, FourierCoeffs, UnimodularSamples


def lift_of(fn, N):
    return phase_lift(UnimodularSamples.from_phase(CircleSamples.from_function(fn, N)))


class ProfileTests(SimpleTestCase):
    def test_outer_branch(self):
        self.assertAlmostEqual(float(gs_eval(KernelSpec(N=8, s=0.75), 1.5)), 0.5 ** 1.5, places=14)

    def test_support(self):
        for s in (0.25, 0.5, 0.75):
            spec = KernelSpec(N=8, s=s)
            self.assertEqual(float(gs_eval(spec, 2.0)), 0.0)
            self.assertEqual(float(gs_eval(spec, -2.5)), 0.0)
            self.assertEqual(float(gs_eval(spec, 0.3)), float(gs_eval(spec, -0.3)))

    def test_second_derivative_is_continuous_at_one(self):
        h = 1e-3
        for s in (0.25, 0.5, 0.75):
            spec = KernelSpec(N=8, s=s)
            g = lambda x: float(gs_eval(spec, x))
            left = (g(1 - 2 * h) - 2 * g(1 - h) + g(1)) / h ** 2
            right = (g(1) - 2 * g(1 + h) + g(1 + 2 * h)) / h ** 2
            self.assertLess(abs(left - right), 1e-2)
            self.assertAlmostEqual(left, 2 * s * (2 * s - 1), delta=1e-2)

    def test_blend_is_positive_and_flat_at_zero(self):
        for s in np.linspace(0.05, 0.95, 10):
            spec = KernelSpec(N=4, s=s)
            x = np.linspace(0, 2, 2001)[:-1]
            self.assertTrue(np.all(gs_eval(spec, x) > 0))
            self.assertAlmostEqual(float(gs_eval(spec, 1e-4) - gs_eval(spec, 0)), 0, delta=1e-7)

    def test_spec_bounds(self):
        with self.assertRaises(ValidationError):
            KernelSpec(N=8, s=1.0)
        with self.assertRaises(ValidationError):
            KernelSpec(N=0, s=0.5)


class DeltaTests(SimpleTestCase):
    def test_matches_power_on_low_band(self):
        spec = KernelSpec(N=8, s=0.5)
        self.assertAlmostEqual(float(delta_ns(spec, 4)), 4.0, places=12)
        for s in (0.25, 0.75):
            spec = KernelSpec(N=16, s=s)
            n = np.arange(0, 17)
            self.assertLess(np.max(np.abs(delta_ns(spec, n) - n ** (2 * s))), 1e-11)

    def test_support(self):
        spec = KernelSpec(N=8, s=0.5)
        self.assertEqual(float(delta_ns(spec, -1)), 0.0)
        self.assertEqual(float(delta_ns(spec, 32)), 0.0)
        n = np.arange(-64, 65)
        values = delta_ns(spec, n)
        self.assertTrue(np.all(values >= 0))
        self.assertTrue(np.all(values[(n <= 0) | (n >= 32)] == 0))


class KernelTableTests(SimpleTestCase):
    def test_value_at_zero_is_riemann_sum(self):
        spec = KernelSpec(N=64, s=0.75)
        k0 = float(kernel_values(spec, [0.0])[0])
        n = np.arange(-128, 129)
        self.assertAlmostEqual(k0, float(np.sum(gs_eval(spec, n / 64))), places=9)
        self.assertLess(abs(k0 / (64 * gs_integral(spec)) - 1), 0.05)

    def test_grid_inside_half_open_interval(self):
        grid = default_grid(64)
        self.assertGreater(grid.min(), -np.pi)
        self.assertEqual(grid.max(), np.pi)
        self.assertIn(0.0, grid)
        with self.assertRaises(PreconditionError):
            kns_table(KernelSpec(N=4, s=0.5), grid=[-np.pi])

    def test_fitted_constant_is_stable_under_doubling(self):
        for s in (0.25, 0.5, 0.75):
            constants = [kns_table(KernelSpec(N=N, s=s)).fitted_c for N in (64, 128, 256)]
            self.assertTrue(np.all(np.isfinite(constants)))
            for coarse, fine in zip(constants, constants[1:]):
                self.assertLess(abs(fine / coarse - 1), 0.15)

    def test_decay_bound_holds_with_fitted_constant(self):
        table = kns_table(KernelSpec(N=64, s=0.5))
        self.assertTrue(np.all(np.abs(table.values) <= table.fitted_c * table.envelope * (1 + 1e-12)))
        self.assertEqual(len(list(table.rows())), table.t.size)

    def test_worker_count_does_not_change_values(self):
        spec = KernelSpec(N=32, s=0.25)
        grid = default_grid(2048)
        self.assertTrue(np.array_equal(kernel_values(spec, grid, 1), kernel_values(spec, grid, 4)))


class WeightSumTests(SimpleTestCase):
    def test_symmetric_coefficients_give_zero_antisymmetric_sum(self):
        rng = make_rng(31)
        base = random_coeffs(rng, 64)
        symmetric = FourierCoeffs(64, np.abs(base.values) + np.abs(base.values[::-1]))
        self.assertLess(abs(weight_sums(symmetric, KernelSpec(N=16, s=0.75)).antisymmetric), 1e-10)

    def test_single_mode(self):
        sums = weight_sums(FourierCoeffs.delta(1, 8), KernelSpec(N=2, s=0.5))
        self.assertAlmostEqual(sums.symmetric, 1.0, places=12)
        self.assertAlmostEqual(sums.antisymmetric, 1.0, places=12)

    def test_bandwidth_precondition(self):
        with self.assertRaises(PreconditionError):
            weight_sums(FourierCoeffs.zeros(15), KernelSpec(N=4, s=0.5))

    def test_low_band_and_antisymmetric_bounds(self):
        rng = make_rng(41)
        for _ in range(5):
            coeffs = random_coeffs(rng, 128, decay=0.5)
            spec = KernelSpec(N=24, s=0.6)
            sums = weight_sums(coeffs, spec)
            self.assertGreaterEqual(sums.symmetric, abs(sums.antisymmetric))
            self.assertTrue(truncated_energy_check(coeffs, spec).passed)

    def test_one_sided_transfer_on_capped_spectrum(self):
        # spectrum inside [-N, N], where the shifted weight is exactly n^{2s} on n >= 0
        a, k, N = 0.5, 2, 64
        def fn(t):
            z = np.exp(1j * k * t)
            return np.conj(z) * (a - z) / (1 - a * z)
        coeffs = analyze(CircleSamples.from_function(fn, 1024), 511)
        capped = FourierCoeffs(511, np.where(np.abs(coeffs.indices) <= N, coeffs.values, 0))
        spec = KernelSpec(N=N, s=0.25)
        n = capped.indices
        one_sided = float(np.sum(np.where(n > 0, np.abs(n) ** 0.5, 0) * capped.power()))
        shifted = float(np.sum(delta_ns(spec, n) * capped.power()))
        self.assertAlmostEqual(shifted, one_sided, delta=1e-12)


class JnBoundTests(SimpleTestCase):
    def test_constant_phase(self):
        ledger = jn_bound_check(lift_of(lambda t: 0 * t, 256), KernelSpec(N=16, s=0.75))
        self.assertEqual(ledger.values['J_integral'], 0)
        self.assertEqual(ledger.values['majorant'], 0)
        self.assertTrue(ledger.passed)

    def test_symmetric_phase_has_zero_sum(self):
        ledger = jn_bound_check(lift_of(lambda t: 0.3 * np.sin(t), 256), KernelSpec(N=16, s=0.75))
        self.assertLess(abs(ledger.values['J_spectral']), 1e-10)
        self.assertTrue(ledger.passed)

    def test_ratio_is_stable_across_scales(self):
        phi = lift_of(lambda t: 0.3 * np.sin(t) + 0.2 * np.cos(2 * t), 1024)
        ratios = []
        for N in (16, 32, 64):
            ledger = jn_bound_check(phi, KernelSpec(N=N, s=0.75))
            self.assertTrue(ledger.passed, [c.as_dict() for c in ledger.failures()])
            self.assertEqual(ledger.values['taylor_violations'], 0)
            ratios.append(ledger.values['ratio'])
        self.assertGreater(min(ratios), 0)
        self.assertLess(max(ratios) / min(ratios), 1.25)

    def test_requires_degree_zero_and_resolution(self):
        with self.assertRaises(PreconditionError):
            jn_bound_check(lift_of(lambda t: t, 256), KernelSpec(N=4, s=0.5))
        with self.assertRaises(PreconditionError):
            jn_bound_check(lift_of(lambda t: 0 * t, 64), KernelSpec(N=8, s=0.5))
