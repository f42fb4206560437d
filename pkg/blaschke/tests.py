import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError

from blaschke.services.growth import grow_weighted_norm
from blaschke.services.products import (
    blaschke_coeffs, dilate, factor_coeffs, moebius_boundary, moebius_family, moebius_tail_bandwidth,
    reflected_boundary,
)
from blaschke.services.sweeps import scaling_sweep, sweep_ledger
from blaschke.types import BlaschkeSpec, BlaschkeStage, MoebiusParams
from degree.services.spectral import degree_spectral
from degree.services.winding import degree_winding
from norms.services.weighted import weighted_norm
from norms.types import WeightSeq
from spectrum.exceptions import AliasingError, CircleMapError, PreconditionError
from spectrum.services.transforms import analyze, synthesize
from spectrum.types import CircleSamples, FourierCoeffs, UnimodularSamples

GAP_GRID = [1 - 2.0 ** -m for m in range(2, 8)]


def fit_for(table, law):
    return next(fit for fit in table.fits if fit['law'] == law)


class BlaschkeProductTests(SimpleTestCase):
    def test_zero_at_origin_is_minus_z(self):
        coeffs = blaschke_coeffs([0], 8)
        self.assertAlmostEqual(coeffs[1], -1, places=12)
        self.assertLess(abs(coeffs[0]), 1e-12)

    def test_single_factor_closed_form(self):
        coeffs = blaschke_coeffs([0.5], 16)
        self.assertAlmostEqual(coeffs[0], 0.5, places=12)
        self.assertAlmostEqual(coeffs[1], -0.75, places=12)
        self.assertAlmostEqual(coeffs[2], -0.375, places=12)

    def test_factor_coeffs_agree_with_sampling(self):
        alpha = 0.3 + 0.4j
        sampled = blaschke_coeffs([alpha], 32)
        closed = factor_coeffs(alpha, 33)
        self.assertLess(np.max(np.abs(sampled.values[32:] - closed)), 1e-12)

    def test_winding_counts_zeros(self):
        spec = BlaschkeSpec((BlaschkeStage((0.3, -0.5j), 1),))
        samples = CircleSamples.from_function(spec.boundary, 512)
        self.assertEqual(degree_winding(samples)[0], 2)
        dilated = BlaschkeSpec((BlaschkeStage((0.6,), 3),))
        self.assertEqual(degree_winding(CircleSamples.from_function(dilated.boundary, 512))[0], 3)
        self.assertEqual(dilated.zero_count, 3)

    def test_boundary_is_unimodular_and_analytic(self):
        spec = BlaschkeSpec((BlaschkeStage((0.7, 0.2 - 0.6j), 1),))
        t = np.linspace(0, 2 * np.pi, 1000)
        self.assertLess(np.max(np.abs(np.abs(spec.boundary(t)) - 1)), 1e-12)
        coeffs = blaschke_coeffs([0.7, 0.2 - 0.6j], 64)
        self.assertLess(np.sum(coeffs.power()[coeffs.indices < 0]), 1e-10 * coeffs.energy())

    def test_zero_on_or_near_circle_is_rejected(self):
        with self.assertRaises(AliasingError):
            blaschke_coeffs([1.0], 8)
        with self.assertRaises(AliasingError):
            blaschke_coeffs([0.99999], 8)

    def test_broken_dilation_chain(self):
        with self.assertRaises(CircleMapError):
            BlaschkeSpec((BlaschkeStage((0.5,), 2), BlaschkeStage((0.5,), 3)))


class DilationTests(SimpleTestCase):
    def test_delta_moves(self):
        dilated = dilate(FourierCoeffs.delta(1, 4), 3)
        self.assertEqual(dilated.M, 12)
        self.assertEqual(dilated[3], 1)

    def test_matches_dilated_boundary(self):
        dilated = dilate(blaschke_coeffs([0.4], 40), 3)
        samples = synthesize(dilated, 512)
        spec = BlaschkeSpec((BlaschkeStage((0.4,), 3),))
        self.assertLess(np.max(np.abs(samples.values - spec.boundary(samples.grid))), 1e-12)

    def test_energy_kept_and_weighted_norm_grows(self):
        coeffs = blaschke_coeffs([0.4, -0.3j], 40)
        weight = WeightSeq.named('log', 4)
        base = weighted_norm(coeffs, weight)
        for nu in (3, 4, 8):
            dilated = dilate(coeffs, nu)
            self.assertAlmostEqual(dilated.energy(), coeffs.energy(), places=12)
            self.assertGreater(weighted_norm(dilated, weight), base)

    def test_capacity(self):
        coeffs = blaschke_coeffs([0.4], 40)
        with self.assertRaises(PreconditionError):
            dilate(coeffs, 3, M_out=10)
        with self.assertRaises(PreconditionError):
            dilate(coeffs, 0)


class MoebiusFamilyTests(SimpleTestCase):
    def test_merged_coefficients(self):
        p = MoebiusParams(a=0.5, k=1)
        coeffs = moebius_family(p, moebius_tail_bandwidth(p))
        self.assertAlmostEqual(coeffs[-1], 0.5, places=14)
        self.assertAlmostEqual(coeffs[0], -0.75, places=14)
        self.assertAlmostEqual(coeffs[2], -0.75 * 0.25, places=14)

    def test_fft_oracle(self):
        for a, k in ((0.5, 1), (0.5, 3), (0.8, 2)):
            p = MoebiusParams(a=a, k=k)
            M = moebius_tail_bandwidth(p)
            samples = CircleSamples(moebius_boundary(p, 2 * np.pi * np.arange(4096) / 4096))
            self.assertLess(analyze(samples, M).max_abs_difference(moebius_family(p, M)), 1e-10)

    def test_degree_zero(self):
        for a in (0.3, 0.5, 0.9):
            for k in (1, 2, 4):
                p = MoebiusParams(a=a, k=k)
                coeffs = moebius_family(p, moebius_tail_bandwidth(p))
                self.assertEqual(degree_spectral(coeffs).rounded, 0)
                f = UnimodularSamples.from_function(lambda t: moebius_boundary(p, t), 4096)
                self.assertEqual(degree_winding(f)[0], 0)

    def test_spectrum_sits_on_multiples_of_k(self):
        p = MoebiusParams(a=0.5, k=3)
        coeffs = moebius_family(p, 256)
        support = coeffs.indices[np.abs(coeffs.values) > 0]
        self.assertTrue(all(n == -3 or (n >= 0 and n % 3 == 0) for n in support))

    def test_bandwidth_precondition(self):
        with self.assertRaises(PreconditionError):
            moebius_family(MoebiusParams(a=0.9, k=2), 10)
        with self.assertRaises(ValidationError):
            MoebiusParams(a=1.0, k=1)

    def test_reflected_boundary_has_no_positive_part(self):
        g = blaschke_coeffs([0.5], 32)
        reflected, shifted = reflected_boundary(g)
        self.assertEqual(degree_spectral(reflected).rounded, -1)
        self.assertEqual(degree_spectral(shifted).rounded, -2)
        positive = shifted.power()[shifted.indices > 0]
        self.assertEqual(float(np.sum(positive)), 0.0)
        self.assertAlmostEqual(shifted.energy(), 1.0, places=12)


class WeightedGrowthTests(SimpleTestCase):
    def assertChain(self, trace):
        chain = trace.spec.nu_chain
        for previous, current in zip(chain, chain[1:]):
            self.assertEqual(current % previous, 0)

    def test_linear_weight_doubles(self):
        trace = grow_weighted_norm(WeightSeq.named('linear', 2), 5, 2.0)
        self.assertTrue(trace.success)
        self.assertEqual(len(trace.norms), 5)
        self.assertTrue(all(ratio >= 2 - 1e-12 for ratio in trace.ratios))
        self.assertChain(trace)
        self.assertEqual(trace.as_dict()['nu_chain'], trace.spec.nu_chain)

    def test_constant_weight_cannot_grow(self):
        trace = grow_weighted_norm(WeightSeq.named('constant', 2), 5, 1.5)
        self.assertFalse(trace.success)
        self.assertEqual(trace.norms, [])
        self.assertIn('stage 1', trace.diagnostic)

    def test_log_weight_too_slow_for_doubling(self):
        trace = grow_weighted_norm(WeightSeq.named('log', 2), 5, 2.0)
        self.assertFalse(trace.success)
        self.assertTrue(trace.diagnostic)

    def test_log_weight_with_mild_growth(self):
        trace = grow_weighted_norm(WeightSeq.named('log', 2), 5, 1.1)
        self.assertTrue(trace.success)
        self.assertTrue(all(b > a for a, b in zip(trace.norms, trace.norms[1:])))
        self.assertChain(trace)

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            grow_weighted_norm(WeightSeq(np.array([2.0, 1.0, 3.0])), 2, 2.0)
        with self.assertRaises(PreconditionError):
            grow_weighted_norm(WeightSeq.named('log', 2), 2, 1.0)


class ScalingSweepTests(SimpleTestCase):
    def test_gap_law_below_one_half(self):
        table = scaling_sweep(0.25, GAP_GRID, [8])
        fit = fit_for(table, 'gap')
        self.assertLess(abs(fit['slope'] - 0.25), 0.05)
        self.assertEqual(fit['points'], 4)
        self.assertTrue(sweep_ledger(table).passed)

    def test_k_law_is_exact(self):
        table = scaling_sweep(0.25, [0.9], [2, 4, 8, 16, 32, 64])
        self.assertAlmostEqual(fit_for(table, 'k')['slope'], 0.5, places=6)
        self.assertFalse([fit for fit in table.fits if fit['law'] == 'gap'])

    def test_conjugate_law_above_one_half(self):
        table = scaling_sweep(0.75, GAP_GRID, [1], conjugate=True)
        fit = fit_for(table, 'conjugate')
        self.assertLess(abs(fit['slope'] - 0.5), 0.05)
        self.assertLessEqual(fit['range_ratio'], 2.0)
        np.testing.assert_allclose(table.column('one_sided'), np.array(GAP_GRID) ** 2, rtol=1e-12)

    def test_rows_independent_of_workers(self):
        one = scaling_sweep(0.25, GAP_GRID, [1, 2, 4], workers=1)
        four = scaling_sweep(0.25, GAP_GRID, [1, 2, 4], workers=4)
        self.assertEqual(one.rows, four.rows)
        self.assertEqual(len(one.rows), 18)

    def test_rejections(self):
        with self.assertRaises(PreconditionError):
            scaling_sweep(0.5, GAP_GRID, [1])
        with self.assertRaises(PreconditionError):
            scaling_sweep(0.25, [1.2], [1])
        with self.assertRaises(PreconditionError):
            scaling_sweep(0.25, [0.5, 0.6], [1])
