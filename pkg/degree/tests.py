import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st

from degree.services.spectral import (
    check_symmetric_energy_identity, degree_gap_inequality, degree_spectral, normalize_degree, shift_loss,
)
from degree.services.winding import degree_winding, phase_lift
from spectrum.exceptions import PreconditionError, ResolutionError
from spectrum.services.generators import make_rng, random_coeffs, random_degree_map
from spectrum.services.transforms import analyze
from spectrum.types import CircleSamples, FourierCoeffs, UnimodularSamples


def moebius(a, N):
    return UnimodularSamples.from_function(lambda t: (a - np.exp(1j * t)) / (1 - a * np.exp(1j * t)), N)


def counterexample_map(a, k, N):
    def fn(t):
        z = np.exp(1j * k * t)
        return np.conj(z) * (a - z) / (1 - a * z)
    return UnimodularSamples.from_function(fn, N)


class WindingTests(SimpleTestCase):
    def test_power_map(self):
        f = UnimodularSamples.from_function(lambda t: np.exp(5j * t), 256)
        self.assertEqual(degree_winding(f)[0], 5)

    def test_null_homotopic(self):
        f = UnimodularSamples.from_function(lambda t: np.exp(0.4j * np.sin(t)), 256)
        self.assertEqual(degree_winding(f)[0], 0)

    def test_moebius_factor_counts_one_zero(self):
        self.assertEqual(degree_winding(moebius(0.9, 512))[0], 1)

    def test_step_of_pi_is_rejected(self):
        f = UnimodularSamples.from_function(lambda t: np.exp(4j * t), 8)
        with self.assertRaises(ResolutionError) as ctx:
            degree_winding(f)
        self.assertIn('try 16', str(ctx.exception))

    def test_lift_reproduces_samples(self):
        f, _ = random_degree_map(make_rng(4), 1024)
        lift = phase_lift(f)
        self.assertLess(np.max(np.abs(lift.exp() - f.values)), 1e-12)
        self.assertEqual(lift.periodic_part().N, 1024)

    def test_products_add_degrees(self):
        rng = make_rng(2024)
        for _ in range(50):
            f, d = random_degree_map(rng, 2048)
            g, e = random_degree_map(rng, 2048)
            self.assertEqual(degree_winding(f * g)[0], d + e)


class SpectralDegreeTests(SimpleTestCase):
    def test_power_map_exact(self):
        for k in (-3, 0, 2, 7):
            result = degree_spectral(FourierCoeffs.delta(k, 16))
            self.assertEqual(result.spectral_sum, k)
            self.assertEqual(result.residual, 0)

    def test_conjugated_blaschke_product(self):
        def fn(t):
            z = np.exp(1j * t)
            b = (0.3 - z) / (1 - 0.3 * z) * (-0.5j - z) / (1 - 0.5j * z)
            return np.conj(b)
        f = UnimodularSamples.from_function(fn, 1024)
        result = degree_spectral(analyze(f.base, 511), winding=degree_winding(f)[0])
        self.assertEqual(result.rounded, -2)
        self.assertTrue(result.agrees)
        self.assertLess(result.residual, 1e-10)

    def test_cross_validation_with_winding(self):
        rng = make_rng(1)
        worst = 0.0
        for _ in range(100):
            f, d = random_degree_map(rng, 4096)
            result = degree_spectral(analyze(f.base, 2047), winding=degree_winding(f)[0])
            self.assertEqual(result.rounded, d)
            self.assertTrue(result.agrees)
            worst = max(worst, result.residual)
        self.assertLess(worst, 1e-6)

    @hypothesis_settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1), st.floats(-np.pi, np.pi))
    def test_rotation_invariance(self, seed, theta):
        f, _ = random_degree_map(make_rng(seed), 512)
        coeffs = analyze(f.base, 255)
        rotated = analyze((f * np.exp(1j * theta)).base, 255)
        self.assertAlmostEqual(
            degree_spectral(rotated).spectral_sum, degree_spectral(coeffs).spectral_sum, delta=1e-9,
        )

    def test_large_residual_is_logged_not_raised(self):
        coeffs = FourierCoeffs.from_mapping({1: np.sqrt(0.5)}, 4)
        with self.assertLogs('degree.services.spectral', level='WARNING'):
            result = degree_spectral(coeffs)
        self.assertEqual(result.rounded, 0)
        self.assertAlmostEqual(result.residual, 0.5)

    def test_gap_inequality_margin(self):
        rng = make_rng(8)
        for _ in range(10):
            check = degree_gap_inequality(random_coeffs(rng, 20))
            self.assertTrue(check.passed)


class EnergyIdentityTests(SimpleTestCase):
    def test_smooth_degree_zero_map(self):
        f = UnimodularSamples.from_function(lambda t: np.exp(1j * np.sin(t)), 256)
        identity = check_symmetric_energy_identity(analyze(f.base, 127))
        self.assertLess(identity.difference, 1e-8)
        self.assertTrue(identity.passed)

    def test_constant(self):
        identity = check_symmetric_energy_identity(FourierCoeffs.delta(0, 3))
        self.assertEqual(identity.two_sided, 0)
        self.assertEqual(identity.doubled_positive, 0)

    def test_counterexample_family(self):
        f = counterexample_map(0.3, 1, 256)
        identity = check_symmetric_energy_identity(analyze(f.base, 127))
        self.assertLess(identity.difference, 1e-8)

    def test_nonzero_degree_rejected(self):
        with self.assertRaises(PreconditionError) as ctx:
            check_symmetric_energy_identity(FourierCoeffs.delta(2, 4))
        self.assertIn('normalize_degree', str(ctx.exception))


class NormalizeDegreeTests(SimpleTestCase):
    def test_power_map_to_constant(self):
        shifted = normalize_degree(FourierCoeffs.delta(3, 8), 3)
        self.assertEqual(shifted.max_abs_difference(FourierCoeffs.delta(0, 8)), 0)

    def test_shift_and_back(self):
        rng = make_rng(12)
        for d in (-8, -3, 0, 5, 8):
            coeffs = random_coeffs(rng, 8).with_bandwidth(16)
            back = normalize_degree(normalize_degree(coeffs, d), -d)
            self.assertEqual(back.max_abs_difference(coeffs), 0)

    def test_moebius_factor_drops_to_degree_zero(self):
        coeffs = analyze(moebius(0.5, 256).base, 127)
        self.assertEqual(degree_spectral(normalize_degree(coeffs, 1)).rounded, 0)

    def test_truncation_is_reported(self):
        coeffs = FourierCoeffs.from_mapping({-4: 1.0, 0: 1.0}, 4)
        self.assertEqual(shift_loss(coeffs, 1), 1.0)
        with self.assertLogs('degree.services.spectral', level='WARNING'):
            normalize_degree(coeffs, 1)

    def test_shift_beyond_bandwidth(self):
        with self.assertRaises(PreconditionError):
            normalize_degree(FourierCoeffs.zeros(3), 4)

    def test_real_samples_lift(self):
        # nonunimodular positive samples still lift to winding zero
        lift = phase_lift(CircleSamples(np.linspace(1, 2, 16)))
        self.assertEqual(lift.winding, 0)
