import json
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st
from pydantic import ValidationError

from spectrum.exceptions import AliasingError, CircleMapError, InputFormatError
from spectrum.services.generators import make_rng, random_coeffs, random_trig_phase, square_phase_map
from spectrum.services.io import read_coeffs, read_samples, write_coeffs, write_samples
from spectrum.services.transforms import (
    analyze, dyadic_blocks, hilbert, hilbert_samples, project, smooth, synthesize,
)
from spectrum.types import CircleSamples, FourierCoeffs, SmootherSpec, UnimodularSamples


class CircleSamplesTests(SimpleTestCase):
    def test_rejects_non_power_of_two(self):
        with self.assertRaises(CircleMapError):
            CircleSamples(np.ones(12))

    def test_rejects_non_finite(self):
        values = np.ones(8)
        values[3] = np.nan
        with self.assertRaises(CircleMapError):
            CircleSamples(values)

    def test_unimodular_tolerance(self):
        UnimodularSamples(CircleSamples(np.full(8, 1 + 1e-10)))
        with self.assertRaises(CircleMapError):
            UnimodularSamples(CircleSamples(np.full(8, 1.01)))

    def test_values_are_read_only(self):
        samples = CircleSamples(np.ones(8))
        with self.assertRaises(ValueError):
            samples.values[0] = 2.0


class AnalyzeTests(SimpleTestCase):
    def test_pure_mode(self):
        coeffs = analyze(CircleSamples.from_function(lambda t: np.exp(3j * t), 64), 8)
        self.assertAlmostEqual(abs(coeffs[3] - 1), 0, delta=1e-12)
        others = np.delete(coeffs.values, 3 + 8)
        self.assertLess(np.max(np.abs(others)), 1e-12)

    def test_constant(self):
        coeffs = analyze(CircleSamples(np.ones(32)), 10)
        self.assertAlmostEqual(coeffs[0], 1, delta=1e-14)
        self.assertLess(np.max(np.abs(np.delete(coeffs.values, 10))), 1e-14)

    def test_moebius_factor_matches_geometric_series(self):
        a = 0.5
        samples = CircleSamples.from_function(lambda t: (a - np.exp(1j * t)) / (1 - a * np.exp(1j * t)), 128)
        coeffs = analyze(samples, 40)
        expected = np.zeros(81, dtype=complex)
        expected[40] = a
        j = np.arange(40)
        expected[41:] = -(1 - a ** 2) * a ** j
        self.assertLess(np.max(np.abs(coeffs.values - expected)), 1e-10)

    def test_bandwidth_past_nyquist_rejected(self):
        with self.assertRaises(AliasingError):
            analyze(CircleSamples(np.ones(64)), 32)

    def test_default_bandwidth(self):
        self.assertEqual(analyze(CircleSamples(np.ones(64))).M, 31)


class SynthesizeTests(SimpleTestCase):
    def test_delta_gives_exponential(self):
        samples = synthesize(FourierCoeffs.delta(1, 4), 16)
        t = 2 * np.pi * np.arange(16) / 16
        self.assertLess(np.max(np.abs(samples.values - np.exp(1j * t))), 1e-14)

    def test_round_trip(self):
        coeffs = random_coeffs(make_rng(7), 32)
        self.assertLess(analyze(synthesize(coeffs, 128), 32).max_abs_difference(coeffs), 1e-12)

    def test_too_few_samples_rejected(self):
        with self.assertRaises(AliasingError):
            synthesize(FourierCoeffs.zeros(8), 16)


class ProjectionTests(SimpleTestCase):
    def test_delta_projections(self):
        plus = FourierCoeffs.delta(3, 8)
        minus = FourierCoeffs.delta(-3, 8)
        self.assertEqual(project(plus, 0).max_abs_difference(plus), 0)
        self.assertEqual(project(minus, 0).energy(), 0)

    def test_dyadic_tiles_reconstruct(self):
        coeffs = random_coeffs(make_rng(3), 100)
        total = project(coeffs, None, -1)
        for lo, hi in dyadic_blocks(coeffs.M):
            total = total + project(coeffs, lo, hi)
        self.assertLess(total.max_abs_difference(coeffs), 1e-15)

    def test_blocks_are_disjoint_and_cover(self):
        covered = [n for lo, hi in dyadic_blocks(37) for n in range(lo, hi + 1)]
        self.assertEqual(covered, list(range(38)))

    @hypothesis_settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1), st.integers(-20, 20), st.integers(0, 20))
    def test_idempotent_and_orthogonal(self, seed, lo, width):
        coeffs = random_coeffs(make_rng(seed), 24)
        once = project(coeffs, lo, lo + width)
        self.assertEqual(project(once, lo, lo + width).max_abs_difference(once), 0)
        rest = project(coeffs, lo + width + 1)
        self.assertLess(abs(np.vdot(once.values, rest.values)), 1e-12)


class HilbertTests(SimpleTestCase):
    def test_cos_to_sin(self):
        cos = analyze(CircleSamples.from_function(np.cos, 32), 8)
        sin = analyze(CircleSamples.from_function(np.sin, 32), 8)
        self.assertLess(hilbert(cos).max_abs_difference(sin), 1e-14)

    def test_constant_to_zero(self):
        self.assertEqual(hilbert(FourierCoeffs.delta(0, 4, 2.5)).energy(), 0)

    @hypothesis_settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_involution_and_energy(self, seed):
        coeffs = random_coeffs(make_rng(seed), 16)
        mean_free = coeffs - FourierCoeffs.delta(0, 16, coeffs[0])
        twice = hilbert(hilbert(coeffs))
        self.assertLess((twice + mean_free).max_abs_difference(FourierCoeffs.zeros(16)), 1e-15)
        self.assertAlmostEqual(hilbert(coeffs).energy(), mean_free.energy(), delta=1e-12)

    def test_samples_variant_is_real(self):
        u = random_trig_phase(make_rng(1), 64, 6, 1.0)
        conj = hilbert_samples(u)
        self.assertTrue(conj.is_real)
        expected = synthesize(hilbert(analyze(u, 31)), 64).values
        self.assertLess(np.max(np.abs(conj.values - expected)), 1e-12)


class SmoothTests(SimpleTestCase):
    def test_spec_validation(self):
        with self.assertRaises(ValidationError):
            SmootherSpec(epsilon=0)
        with self.assertRaises(ValidationError):
            SmootherSpec(epsilon=0.5, family='gauss')
        self.assertEqual(SmootherSpec(epsilon=0.125).cutoff, 8)
        self.assertEqual(SmootherSpec(epsilon=0.1).cutoff, 10)

    def test_multipliers(self):
        for family in ('fejer', 'vallee-poussin'):
            m = SmootherSpec(family=family, epsilon=0.25).multipliers(np.arange(-20, 21))
            self.assertEqual(m[20], 1.0)
            self.assertTrue(np.all((m >= 0) & (m <= 1)))

    def test_constant_unchanged(self):
        f = CircleSamples(np.full(64, 2 - 1j))
        for family in ('fejer', 'vallee-poussin'):
            out = smooth(f, SmootherSpec(family=family, epsilon=0.3))
            self.assertLess(out.sup_distance(f), 1e-14)

    def test_low_mode_exact_under_flat_band(self):
        f = CircleSamples.from_function(lambda t: np.exp(1j * t), 64)
        self.assertLess(smooth(f, SmootherSpec(epsilon=0.5)).sup_distance(f), 1e-14)

    def test_sup_error_decreases(self):
        f = square_phase_map(1024)
        errors = [smooth(f.base, SmootherSpec(epsilon=eps)).sup_distance(f) for eps in (1 / 8, 1 / 16, 1 / 32)]
        self.assertGreater(errors[0], errors[1])
        self.assertGreater(errors[1], errors[2])

    @hypothesis_settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1), st.floats(0.05, 1.0))
    def test_fejer_never_increases_sup(self, seed, eps):
        f = CircleSamples(random_trig_phase(make_rng(seed), 128, 20, 3.0).values * 1j)
        out = smooth(f, SmootherSpec(family='fejer', epsilon=eps))
        self.assertLessEqual(out.sup_norm(), f.sup_norm() + 1e-12)

    def test_parseval(self):
        coeffs = random_coeffs(make_rng(11), 30)
        samples = synthesize(coeffs, 64)
        self.assertAlmostEqual(samples.energy(), coeffs.energy(), delta=1e-10)


class FileFormatTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_coeff_csv_round_trip(self):
        coeffs = random_coeffs(make_rng(5), 6)
        path = write_coeffs(coeffs, self.root / 'c.csv')
        self.assertEqual(read_coeffs(path).max_abs_difference(coeffs), 0)

    def test_sparse_json(self):
        path = self.root / 'c.json'
        path.write_text(json.dumps([{'n': 3, 're': 1, 'im': 0}, {'n': -1, 're': 0, 'im': 0.5}]))
        coeffs = read_coeffs(path)
        self.assertEqual(coeffs.M, 3)
        self.assertEqual(coeffs[3], 1)
        self.assertEqual(coeffs[-1], 0.5j)
        self.assertEqual(coeffs[2], 0)

    def test_bad_row_reports_line(self):
        path = self.root / 'c.csv'
        path.write_text("n,re,im\n0,1,0\n1,abc,0\n")
        with self.assertRaises(InputFormatError) as ctx:
            read_coeffs(path)
        self.assertEqual(ctx.exception.line, 3)
        self.assertIn('c.csv:3', str(ctx.exception))

    def test_bad_header(self):
        path = self.root / 'c.csv'
        path.write_text("k,re,im\n0,1,0\n")
        with self.assertRaises(InputFormatError):
            read_coeffs(path)

    def test_samples_round_trip(self):
        samples = CircleSamples.from_function(lambda t: np.exp(2j * t), 16)
        path = write_samples(samples, self.root / 's.csv')
        self.assertEqual(read_samples(path).sup_distance(samples), 0)
