import numpy as np
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings as hypothesis_settings, strategies as st
from pydantic import ValidationError

from norms.services.analytic import analytic_part_bound, random_small_phase
from norms.services.oscillation import bmo_norm, default_widths, dyadic_scales, vmo_profile
from norms.services.quadrature import capped_weights, circle_distance, lag_sum, power_difference
from norms.services.sobolev import equivalence_ratio, sobolev_integral, sobolev_spectral
from norms.services.weighted import weighted_norm
from norms.types import SobolevParams, WeightSeq
from spectrum.exceptions import CircleMapError, PreconditionError
from spectrum.services.generators import make_rng, random_coeffs, random_smooth_modulus, random_trig_phase
from spectrum.services.transforms import analyze, hilbert_samples
from spectrum.types import CircleSamples, FourierCoeffs, UnimodularSamples


class SobolevSpectralTests(SimpleTestCase):
    def test_pure_mode(self):
        value = sobolev_spectral(FourierCoeffs.delta(4, 8), SobolevParams(s=0.5, side='two'))
        self.assertAlmostEqual(value, 4.0, places=14)

    def test_anti_analytic_one_sided_is_zero(self):
        coeffs = FourierCoeffs.from_mapping({-3: 1.0, -1: 0.5j, 0: 2.0}, 5)
        self.assertEqual(sobolev_spectral(coeffs, SobolevParams(s=0.75, side='one')), 0)

    def test_counterexample_family_against_closed_form(self):
        a, k, s = 0.5, 2, 0.25
        def fn(t):
            z = np.exp(1j * k * t)
            return np.conj(z) * (a - z) / (1 - a * z)
        samples = CircleSamples.from_function(fn, 256)
        computed = sobolev_spectral(analyze(samples, 127), SobolevParams(s=s))
        closed = k ** (2 * s) * a ** 2 + sum(
            (j * k) ** (2 * s) * ((1 - a ** 2) * a ** j) ** 2 for j in range(1, 64)
        )
        self.assertAlmostEqual(computed, closed, delta=1e-10)

    def test_truncated_form(self):
        coeffs = FourierCoeffs.from_mapping({2: 1.0, -10: 1.0}, 10)
        value = sobolev_spectral(coeffs, SobolevParams(s=0.5, n_cut=4))
        self.assertAlmostEqual(value, 2 + 4)

    @hypothesis_settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1), st.floats(0.05, 2.0))
    def test_two_sided_splits_into_one_sided_halves(self, seed, s):
        coeffs = random_coeffs(make_rng(seed), 20)
        two = sobolev_spectral(coeffs, SobolevParams(s=s))
        one = sobolev_spectral(coeffs, SobolevParams(s=s, side='one'))
        mirror = sobolev_spectral(coeffs.reflected(), SobolevParams(s=s, side='one'))
        self.assertAlmostEqual(two, one + mirror, delta=1e-10 * max(1.0, two))

    def test_params_validation(self):
        with self.assertRaises(ValidationError):
            SobolevParams(s=0)
        with self.assertRaises(ValidationError):
            SobolevParams(s=0.5, side='left')


class QuadratureTests(SimpleTestCase):
    def test_circle_distance_folds(self):
        self.assertAlmostEqual(float(circle_distance(2 * np.pi - 0.1)), 0.1)
        self.assertAlmostEqual(float(circle_distance(-3 * np.pi)), np.pi)

    def test_capped_weights(self):
        weights = capped_weights(64, 4, 0.5)
        self.assertEqual(weights[0], 0)
        self.assertEqual(weights.max(), 16.0)
        self.assertEqual(weights[1], weights[-1])

    def test_worker_count_does_not_change_result(self):
        f = random_trig_phase(make_rng(9), 1024, 8, 1.0)
        weights = capped_weights(1024, 32, 0.25)
        with override_settings(QUADRATURE_CHUNK=100):
            single = lag_sum(f.values, weights, power_difference(2), workers=1)
            many = lag_sum(f.values, weights, power_difference(2), workers=4)
        self.assertEqual(single, many)


class SobolevIntegralTests(SimpleTestCase):
    def test_constant(self):
        self.assertEqual(sobolev_integral(CircleSamples(np.ones(64)), 0.5, 8), 0)

    def test_range_of_s(self):
        f = CircleSamples(np.ones(64))
        for s in (0, 1, 1.5):
            with self.assertRaises(PreconditionError):
                sobolev_integral(f, s, 8)

    def test_single_mode_ratio(self):
        f = CircleSamples.from_function(lambda t: np.exp(1j * t), 1024)
        ratio = equivalence_ratio(f, analyze(f, 511), 0.5, 32)
        self.assertGreater(ratio, 0.1)
        self.assertLess(ratio, 10)

    def test_ratio_bracket_does_not_depend_on_scale(self):
        rng = make_rng(46)
        for s in (0.25, 0.5, 0.75):
            ratios = []
            for _ in range(3):
                f = CircleSamples(np.exp(1j * random_trig_phase(rng, 512, 8, 1.5).values))
                coeffs = analyze(f, 255)
                ratios.extend(equivalence_ratio(f, coeffs, s, N) for N in (16, 32, 64))
            self.assertTrue(np.all(np.isfinite(ratios)))
            self.assertLess(max(ratios) / min(ratios), 50)


class OscillationTests(SimpleTestCase):
    def test_constant(self):
        self.assertEqual(bmo_norm(CircleSamples(np.full(256, 3.0))), 0)

    def test_bounded_by_twice_sup(self):
        rng = make_rng(3)
        for _ in range(5):
            f = UnimodularSamples.from_phase(random_trig_phase(rng, 512, 10, 3.0))
            self.assertLessEqual(bmo_norm(f.base), 2 * f.base.sup_norm())

    def test_refining_grid_never_decreases(self):
        f = CircleSamples(random_trig_phase(make_rng(5), 512, 10, 2.0).values)
        coarse = bmo_norm(f, centers=np.linspace(0, 2 * np.pi, 8, endpoint=False), widths=default_widths(4))
        fine = bmo_norm(f, centers=np.linspace(0, 2 * np.pi, 64, endpoint=False), widths=default_widths(8))
        self.assertGreaterEqual(fine, coarse)

    def test_width_range(self):
        with self.assertRaises(PreconditionError):
            bmo_norm(CircleSamples(np.ones(16)), widths=[4.0])

    def test_hilbert_contract_constant(self):
        rng = make_rng(16)
        ratios = []
        for _ in range(20):
            rho = random_smooth_modulus(rng, 512, 6, 0.2)
            log_rho = CircleSamples(np.log(rho.values))
            ratios.append(bmo_norm(hilbert_samples(log_rho)) / log_rho.sup_norm())
        kappa = max(ratios)
        self.assertGreater(kappa, 0)
        self.assertLess(kappa, 10)

    def test_vmo_profile_of_continuous_map(self):
        f = UnimodularSamples.from_function(lambda t: np.exp(1j * np.sin(t)), 1024)
        profile = vmo_profile(f.base, dyadic_scales(f.base))
        # the two coarsest windows see the same value distribution of sin t
        self.assertTrue(np.all(np.diff(profile.osc[2:]) <= 0))
        self.assertLess(profile.tail, 0.05)
        self.assertGreaterEqual(profile.slack.min(), -1e-12)

    def test_vmo_profile_of_constant(self):
        profile = vmo_profile(CircleSamples(np.ones(64, dtype=complex)), [1.0, 0.5, 0.25])
        self.assertEqual(profile.osc.max(), 0)

    def test_windowwise_inequality_on_rough_maps(self):
        rng = make_rng(69)
        for _ in range(5):
            f = UnimodularSamples.from_phase(random_trig_phase(rng, 512, 40, 6.0))
            self.assertGreaterEqual(vmo_profile(f.base, dyadic_scales(f.base)).slack.min(), -1e-12)

    def test_scales_must_decrease(self):
        with self.assertRaises(PreconditionError):
            vmo_profile(CircleSamples(np.ones(16)), [0.5, 1.0])


class WeightedNormTests(SimpleTestCase):
    def test_constant_weight_on_unimodular_analytic_map(self):
        f = CircleSamples.from_function(lambda t: (0.5 - np.exp(1j * t)) / (1 - 0.5 * np.exp(1j * t)), 256)
        value = weighted_norm(analyze(f, 127), WeightSeq.named('constant', 128))
        self.assertLessEqual(value, 1 + 1e-10)

    def test_log_weight_on_delta(self):
        value = weighted_norm(FourierCoeffs.delta(9, 12), WeightSeq.named('log', 4))
        self.assertAlmostEqual(value, np.sqrt(np.log(11)), places=14)

    def test_weight_sequence(self):
        w = WeightSeq.named('log', 10)
        self.assertTrue(w.tends_to_infinity)
        self.assertTrue(w.is_nondecreasing())
        self.assertFalse(WeightSeq.named('constant', 10).tends_to_infinity)
        with self.assertRaises(CircleMapError):
            WeightSeq(np.array([1.0, 2.0])).extended(5)
        with self.assertRaises(CircleMapError):
            WeightSeq(np.array([1.0, -2.0]))


class AnalyticPartBoundTests(SimpleTestCase):
    def test_zero_phase(self):
        ledger = analytic_part_bound(CircleSamples(np.zeros(64)), 0.9)
        self.assertTrue(ledger.passed)
        self.assertEqual(ledger.values['f_norm'], 0)

    def test_single_sine(self):
        phi = CircleSamples.from_function(lambda t: 0.05 * np.sin(t), 256)
        ledger = analytic_part_bound(phi, 0.9)
        self.assertTrue(ledger.passed)
        self.assertLessEqual(ledger.values['ratio'], 3)

    def test_two_modes_above_one(self):
        phi = CircleSamples.from_function(lambda t: 0.03 * (np.sin(t) + 0.5 * np.sin(3 * t)), 256)
        ledger = analytic_part_bound(phi, 1.2)
        self.assertTrue(ledger.passed)
        self.assertTrue(ledger.find('analytic.ratio').passed)

    def test_large_phase_rejected(self):
        phi = CircleSamples.from_function(lambda t: 0.5 * np.sin(t), 64)
        with self.assertRaises(PreconditionError):
            analytic_part_bound(phi, 0.9)

    def test_seeded_sweep(self):
        rng = make_rng(71)
        for s_prime in (0.9, 1.2, 1.5):
            for _ in range(20):
                phi = random_small_phase(rng, 256, s_prime, rng.uniform(0.01, 0.06))
                ledger = analytic_part_bound(phi, s_prime)
                self.assertTrue(ledger.find('analytic.ratio').passed)
                self.assertTrue(ledger.find('analytic.h-small').passed)
