import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st
from pydantic import ValidationError

from degree.services.winding import phase_lift
from pipeline.services.half_case import verify_half_case
from pipeline.services.polar import build_H, build_schedule, outer, polar
from pipeline.services.reduction import reduce_argument
from pipeline.services.small_case import dyadic_constant, pair_inequality, verify_small_case
from pipeline.services.vmo import vmo_entry
from pipeline.types import PipelineConfig
from spectrum.exceptions import (
    AliasingError, ModulusCollapseError, NotVMOError, PreconditionError, ReductionError,
)
from spectrum.services.generators import make_rng, random_smooth_modulus, random_trig_phase, two_arc_map
from spectrum.services.transforms import analyze, smooth
from spectrum.types import CircleSamples, SmootherSpec, UnimodularSamples


def phase_map(fn, N=1024):
    return UnimodularSamples.from_phase(CircleSamples.from_function(fn, N))


def moebius_map(a, k, N=1024):
    def fn(t):
        z = np.exp(1j * k * t)
        return np.conj(z) * (a - z) / (1 - a * z)
    return UnimodularSamples.from_function(fn, N)


def positive_energy_fraction(samples):
    coeffs = analyze(samples)
    power = coeffs.power()
    return float(np.sum(power[coeffs.indices > 0]) / np.sum(power))


class PipelineConfigTests(SimpleTestCase):
    def test_defaults_come_from_settings(self):
        cfg = PipelineConfig()
        self.assertEqual(cfg.eps_schedule, [0.125, 0.0625, 0.03125, 0.015625])
        self.assertEqual(cfg.delta0, 0.1)
        self.assertEqual(cfg.absorption_factor, 2.0)

    def test_rejects_bad_values(self):
        with self.assertRaises(ValidationError):
            PipelineConfig(eps_schedule=[0.1, 0.2])
        with self.assertRaises(ValidationError):
            PipelineConfig(eps_schedule=[])
        with self.assertRaises(ValidationError):
            PipelineConfig(delta0=1.0)
        with self.assertRaises(ValidationError):
            PipelineConfig(rho_floor=0.6)


class PolarTests(SimpleTestCase):
    def test_unimodular_input(self):
        f = phase_map(lambda t: 0.4 * np.cos(t))
        parts = polar(f.base)
        self.assertLess(parts.gap, 1e-14)
        self.assertLess(np.max(np.abs(parts.reconstruct().values - f.values)), 1e-10)

    def test_scaled_rotation(self):
        parts = polar(CircleSamples.from_function(lambda t: 0.5 * np.exp(1j * t), 64))
        self.assertLess(np.max(np.abs(parts.rho.values - 0.5)), 1e-15)
        self.assertEqual(parts.phi.winding, 1)
        self.assertAlmostEqual(parts.inverse_sup, 2.0, places=12)

    def test_collapsed_modulus(self):
        with self.assertRaises(ModulusCollapseError) as ctx:
            polar(CircleSamples(np.full(64, 0.1 + 0j)))
        self.assertAlmostEqual(ctx.exception.min_modulus, 0.1)

    def test_smoothed_continuous_map_is_near_the_circle(self):
        f = phase_map(lambda t: 0.5 * np.sin(t))
        h = smooth(f.base, SmootherSpec(epsilon=1 / 64))
        self.assertLess(polar(h).gap, 0.1)


class OuterTests(SimpleTestCase):
    def test_unit_modulus(self):
        R = outer(CircleSamples(np.ones(64)))
        self.assertLess(np.max(np.abs(R.values - 1)), 1e-15)

    def test_linear_factor(self):
        rho = CircleSamples.from_function(lambda t: np.abs(1 - 0.5 * np.exp(1j * t)), 256)
        R = outer(rho)
        t = rho.grid
        self.assertLess(np.max(np.abs(np.abs(R.values) * rho.values - 1)), 1e-12)
        self.assertLess(np.max(np.abs(R.values * (1 - 0.5 * np.exp(-1j * t)) - 1)), 1e-12)
        self.assertLess(positive_energy_fraction(R), 1e-8)

    def test_random_smooth_modulus_is_anti_analytic(self):
        rng = make_rng(5)
        for _ in range(5):
            rho = random_smooth_modulus(rng, 512)
            R = outer(rho)
            self.assertLess(np.max(np.abs(np.abs(R.values) * rho.values - 1)), 1e-8)
            self.assertLess(positive_energy_fraction(R), 1e-8)

    def test_zero_modulus(self):
        with self.assertRaises(AliasingError):
            outer(CircleSamples(np.zeros(16)))


class BuildHTests(SimpleTestCase):
    def test_pure_mode_is_fixed(self):
        f = UnimodularSamples.from_function(lambda t: np.exp(3j * t), 256)
        H = build_H(f, 1 / 8)
        self.assertLess(H.sup_distance(f.values), 1e-12)

    def test_smooth_map_at_small_epsilon(self):
        f = phase_map(lambda t: 0.5 * np.sin(t) + 0.2 * np.cos(3 * t))
        self.assertLess(build_H(f, 1 / 64).sup_distance(f.values), 0.05)

    def test_degree_is_preserved_on_gated_stages(self):
        rng = make_rng(17)
        cfg = PipelineConfig()
        for _ in range(20):
            f = UnimodularSamples.from_phase(random_trig_phase(rng, 1024, degree=3, sup=1.0))
            stages = build_schedule(f, cfg, workers=1)
            self.assertTrue(stages[-1].passes_gate(cfg.rho_gate))
            for stage in stages:
                if stage is not None and stage.passes_gate(cfg.rho_gate):
                    self.assertEqual(phase_lift(stage.H).winding, 0)

    def test_worker_count_does_not_change_stages(self):
        f = phase_map(lambda t: 0.5 * np.sin(2 * t))
        one = build_schedule(f, PipelineConfig(), workers=1)
        four = build_schedule(f, PipelineConfig(), workers=4)
        for a, b in zip(one, four):
            self.assertTrue(np.array_equal(a.H.values, b.H.values))


class HalfCaseTests(SimpleTestCase):
    def test_sine_phase_passes(self):
        ledger = verify_half_case(phase_map(lambda t: 0.5 * np.sin(t)))
        self.assertTrue(ledger.passed, [c.as_dict() for c in ledger.failures()])
        C = ledger.values['C']
        self.assertGreater(C, 0)
        self.assertLessEqual(ledger.values['two_sided'], 32 * C)
        self.assertTrue(all(row['gated'] for row in ledger.values['stages']))

    def test_l2_trend_counts_toward_the_verdict(self):
        ledger = verify_half_case(phase_map(lambda t: 0.5 * np.sin(t)))
        trend = ledger.find('half.l2-trend')
        self.assertIsNotNone(trend)
        self.assertTrue(trend.gated)
        self.assertTrue(trend.passed)
        distances = [row['l2_distance'] for row in ledger.values['stages'] if row.get('gated')]
        self.assertLessEqual(distances[-1], distances[0] + 1e-12)

    def test_constant_map(self):
        ledger = verify_half_case(UnimodularSamples(CircleSamples(np.ones(256, dtype=complex))))
        self.assertTrue(ledger.passed)
        self.assertLess(ledger.values['C'], 1e-25)
        for row in ledger.values['stages']:
            self.assertLess(row['one_sided'], 1e-20)
            self.assertLess(row['two_sided'], 1e-20)

    def test_moebius_family_member(self):
        ledger = verify_half_case(moebius_map(0.7, 2))
        self.assertTrue(ledger.passed, [c.as_dict() for c in ledger.failures()])
        self.assertTrue(np.isfinite(ledger.values['ratio']))
        self.assertTrue(any(row.get('gated') for row in ledger.values['stages']))

    def test_random_degree_zero_maps(self):
        rng = make_rng(23)
        for _ in range(20):
            f = UnimodularSamples.from_phase(random_trig_phase(rng, 1024, degree=3, sup=1.0))
            ledger = verify_half_case(f, workers=1)
            self.assertTrue(ledger.passed, [c.as_dict() for c in ledger.failures()])
            identity = [c for c in ledger.checks if c.name.startswith('half.dyadic-identity') and c.gated]
            self.assertTrue(identity)
            self.assertTrue(all(c.lhs < 1e-8 for c in identity))

    def test_nonzero_degree_is_rejected(self):
        with self.assertRaisesRegex(PreconditionError, 'normalize_degree'):
            verify_half_case(UnimodularSamples.from_function(lambda t: np.exp(2j * t), 256))


class ReductionTests(SimpleTestCase):
    def test_sine_phase(self):
        f = phase_map(lambda t: 0.3 * np.sin(t))
        g, multiplier = reduce_argument(f, 0.1)
        lift = phase_lift(g)
        self.assertEqual(lift.winding, 0)
        self.assertLess(np.max(np.abs(lift.values)), 0.1)
        self.assertLess(np.max(np.abs(g.values * multiplier.values - f.values)), 1e-10)

    def test_small_argument_is_left_alone(self):
        f = phase_map(lambda t: 0.05 * np.cos(t))
        reduction = reduce_argument(f, 0.1)
        self.assertIs(reduction.g, f)
        self.assertEqual(reduction.cutoff, 0)
        self.assertTrue(np.all(reduction.psi.values == 0))

    def test_jump_cannot_be_reduced(self):
        with self.assertRaises(ReductionError) as ctx:
            reduce_argument(two_arc_map(256), 0.1)
        self.assertGreaterEqual(ctx.exception.required_cutoff, 63)

    def test_nonzero_degree(self):
        with self.assertRaises(PreconditionError):
            reduce_argument(UnimodularSamples.from_function(lambda t: np.exp(1j * t), 256), 0.1)


class SmallCaseTests(SimpleTestCase):
    def test_small_sine_phase(self):
        ledger = verify_small_case(phase_map(lambda t: 0.05 * np.sin(t)), 0.25)
        self.assertTrue(ledger.passed, [c.as_dict() for c in ledger.failures()])
        stages = ledger.values['stages']
        self.assertEqual(len(stages), 4)
        self.assertTrue(all(row['absorption_margin'] > 0 for row in stages))
        self.assertTrue(ledger.find('small.uniformity').passed)
        self.assertTrue(np.isfinite(ledger.values['uniform_two_sided']))

    def test_zero_phase(self):
        ledger = verify_small_case(UnimodularSamples(CircleSamples(np.ones(256, dtype=complex))), 0.4)
        self.assertTrue(ledger.passed)
        self.assertLess(ledger.values['one_sided'], 1e-25)
        for row in ledger.values['stages']:
            self.assertLess(row['two_sided'], 1e-20)
            self.assertLess(row['quadratic'], 1e-20)

    def test_after_reduction(self):
        ledger = verify_small_case(phase_map(lambda t: 0.3 * np.sin(t) + 0.1 * np.cos(2 * t)), 0.3)
        self.assertTrue(ledger.passed, [c.as_dict() for c in ledger.failures()])
        self.assertGreater(ledger.values['reduction_cutoff'], 0)
        self.assertLess(ledger.values['reduced_sup'], 0.1)

    def test_exponent_range(self):
        f = phase_map(lambda t: 0.05 * np.sin(t))
        with self.assertRaises(PreconditionError):
            verify_small_case(f, 1.0)

    def test_dyadic_constant_at_one_half(self):
        self.assertAlmostEqual(dyadic_constant(0.5), 16.0, places=12)

    def test_pair_inequality_on_a_million_pairs(self):
        violations, worst = pair_inequality(make_rng(2024))
        self.assertEqual(violations, 0)
        self.assertGreaterEqual(worst, -1e-12)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(st.floats(-10, 10), st.floats(-10, 10))
    def test_pair_inequality_property(self, u, v):
        gap = abs(u - v)
        self.assertLessEqual(gap, abs(np.exp(1j * u) - np.exp(1j * v)) + gap ** 1.5 + 1e-12)


class VMOEntryTests(SimpleTestCase):
    def test_continuous_map_passes(self):
        ledger = vmo_entry(phase_map(lambda t: 0.3 * np.sin(t)))
        self.assertTrue(ledger.passed, [c.as_dict() for c in ledger.failures()])
        self.assertIn('small_case', ledger.values)
        self.assertTrue(any(c.name.startswith('small.') for c in ledger.checks))

    def test_jump_fails_the_screen(self):
        with self.assertRaises(NotVMOError) as ctx:
            vmo_entry(two_arc_map(1024))
        self.assertGreater(ctx.exception.tail_oscillation, 0.05)

    def test_modulus_gap_does_not_grow(self):
        ledger = vmo_entry(phase_map(lambda t: 0.05 * np.sin(t) + 0.03 * np.cos(5 * t)))
        gaps = [row['gap'] for row in ledger.values['modulus_gaps']]
        self.assertEqual(len(gaps), 4)
        for coarse, fine in zip(gaps, gaps[1:]):
            self.assertLessEqual(fine, coarse + 1e-10)
        self.assertTrue(ledger.find('vmo.windowwise').passed)
