# core/services/suite_runner.py
"""Runs the selected verification suites in a fixed order on seeded inputs.

Each suite draws from its own generator seeded with (seed, suite position), so
adding or removing a suite never changes the inputs of the others.
"""
import dataclasses
import logging

import numpy as np
from django.conf import settings

from blaschke.services.growth import grow_weighted_norm, growth_ledger
from blaschke.services.sweeps import GAP_CUTOFF, scaling_sweep, sweep_ledger
from core.types import SUITE_ORDER, Check, CheckLedger, VerificationReport
from degree.services.spectral import degree_gap_inequality, degree_spectral
from degree.services.winding import degree_winding, phase_lift
from kernels.services.kernel_table import kns_table
from kernels.services.sums import jn_bound_check, truncated_energy_check
from kernels.types import KernelSpec
from norms.services.analytic import analytic_part_bound, random_small_phase
from norms.services.sobolev import equivalence_ratio
from norms.types import WeightSeq
from pipeline.services.half_case import verify_half_case
from pipeline.services.small_case import verify_small_case
from pipeline.services.vmo import vmo_entry
from spectrum.services.generators import make_rng, random_degree_map, random_trig_phase
from spectrum.services.io import read_map
from spectrum.services.transforms import analyze
from spectrum.types import UnimodularSamples

logger = logging.getLogger(__name__)

SWEEP_A = [1 - 2.0 ** -m for m in range(2, 8)]
SWEEP_K = [1, 2, 4, 8, 16, 32]
KERNEL_EXPONENTS = (0.25, 0.5, 0.75)
KERNEL_STABILITY = 0.15
NORM_EXPONENTS = (0.25, 0.5, 0.75)
NORM_SCALES = (16, 32, 64)
NORM_GRID = 1024
NORM_BRACKET = 50.0


def _tagged(check, tag):
    return dataclasses.replace(check, name=f'{check.name}[{tag}]')


def degree_suite(cfg, rng):
    ledger = CheckLedger('degree')
    if cfg.input:
        maps = [(UnimodularSamples(read_map(cfg.input, cfg.grid)), None)]
    else:
        maps = [random_degree_map(rng, cfg.grid) for _ in range(settings.SUITE_DEGREE_MAPS)]
    M = cfg.environment()['bandwidth']
    rows = []
    for i, (f, expected) in enumerate(maps):
        winding, max_step = degree_winding(f)
        coeffs = analyze(f.base, min(M, f.N // 2 - 1))
        result = degree_spectral(coeffs, winding)
        tag = f'map={i}'
        ledger.add(Check.residual(
            f'degree.agreement[{tag}]', 'degree.spectral-vs-winding', abs(result.rounded - winding), 0.0,
        ))
        ledger.add(Check.residual(f'degree.residual[{tag}]', 'degree.integer-sum', result.residual, 1e-6))
        if expected is not None:
            ledger.add(Check.residual(f'degree.known[{tag}]', 'degree.constructed', abs(winding - expected), 0.0))
        ledger.add(_tagged(degree_gap_inequality(coeffs), tag))
        rows.append({**result.as_dict(), 'max_step': max_step})
    ledger.record('maps', rows)
    return [ledger]


def half_suite(cfg, rng):
    ledgers = []
    for i in range(settings.SUITE_HALF_MAPS):
        f = UnimodularSamples.from_phase(random_trig_phase(rng, cfg.grid, degree=3, sup=1.0))
        ledger = verify_half_case(f, workers=cfg.workers)
        ledger.title = f'half-case[map={i}]'
        ledgers.append(ledger)
    return ledgers


def small_suite(cfg, rng):
    f = UnimodularSamples.from_phase(random_trig_phase(rng, cfg.grid, degree=2, sup=0.05))
    return [verify_small_case(f, cfg.s, workers=cfg.workers, rng=rng)]


def vmo_suite(cfg, rng):
    f = UnimodularSamples.from_phase(random_trig_phase(rng, cfg.grid, degree=2, sup=0.3))
    return [vmo_entry(f, s=cfg.s, workers=cfg.workers, rng=rng)]


def kernel_suite(cfg, rng):
    decay = CheckLedger('kernel-decay')
    constants = {}
    scales = sorted(settings.SUITE_KERNEL_SCALES)
    for s in KERNEL_EXPONENTS:
        fitted = [kns_table(KernelSpec(N=N, s=s), workers=cfg.workers).fitted_c for N in scales]
        constants[str(s)] = dict(zip(map(str, scales), fitted))
        decay.add(Check.residual(
            f'kernel.decay-finite[s={s:g}]', 'kernel.decay-constant', 0.0 if np.isfinite(fitted).all() else 1.0, 0.0,
        ))
        for (N, c), (N2, c2) in zip(zip(scales, fitted), zip(scales[1:], fitted[1:])):
            decay.add(Check.bound(
                f'kernel.decay-stable[s={s:g}, N={N}->{N2}]', 'kernel.decay-constant-stable',
                abs(c2 / c - 1), KERNEL_STABILITY,
            ))
    decay.record('fitted_c', constants)

    N = max(1, min(16, cfg.grid // 64))
    spec = KernelSpec(N=N, s=0.75)
    f = UnimodularSamples.from_phase(random_trig_phase(rng, cfg.grid, degree=3, sup=0.3))
    jn = jn_bound_check(phase_lift(f), spec, workers=cfg.workers)
    jn.add(truncated_energy_check(analyze(f.base), spec))
    return [decay, jn]


def sweep_suite(cfg, rng):
    s = cfg.s
    tables = [scaling_sweep(s, SWEEP_A, SWEEP_K, workers=cfg.workers)]
    tables.append(scaling_sweep(max(s, 1 - s), SWEEP_A, [1], conjugate=True, workers=cfg.workers))
    ledgers = []
    for table in tables:
        ledger = sweep_ledger(table)
        ledger.title = f"sweep[s={table.s:g}{', conjugate' if table.conjugate else ''}]"
        ledger.record('gap_cutoff', GAP_CUTOFF)
        ledgers.append(ledger)
    return ledgers, tables


def r1_suite(cfg, rng):
    return [
        growth_ledger(grow_weighted_norm(WeightSeq.named('linear', 2), 5, 2.0)),
        growth_ledger(grow_weighted_norm(WeightSeq.named('log', 2), 5, 1.1)),
        growth_ledger(grow_weighted_norm(WeightSeq.named('log', 2), 5, 2.0), expect_success=False),
        growth_ledger(grow_weighted_norm(WeightSeq.named('constant', 2), 5, 1.5), expect_success=False),
    ]


def analytic_part_suite(cfg, rng):
    ledgers = []
    for s_prime in (0.9, 1.2, 1.5):
        for i in range(settings.SUITE_ANALYTIC_PHASES):
            phi = random_small_phase(rng, cfg.grid, s_prime, 0.05)
            ledger = analytic_part_bound(phi, s_prime)
            ledger.title = f"analytic-part[s'={s_prime:g}, phase={i}]"
            ledgers.append(ledger)
    return ledgers


def norms_suite(cfg, rng):
    """Integral over truncated spectral seminorm, one bracket per s across maps and scales."""
    grid = min(cfg.grid, NORM_GRID)
    maps = [
        UnimodularSamples.from_phase(random_trig_phase(rng, grid, degree=8, sup=1.5)).base
        for _ in range(settings.SUITE_NORM_MAPS)
    ]
    coeffs = [analyze(f) for f in maps]
    ledger = CheckLedger('norm-equivalence')
    brackets = {}
    for s in NORM_EXPONENTS:
        ratios = np.array([
            equivalence_ratio(f, c, s, N, cfg.workers) for f, c in zip(maps, coeffs) for N in NORM_SCALES
        ])
        finite = bool(np.all(np.isfinite(ratios)) and np.all(ratios > 0))
        ledger.add(Check.residual(f'norms.ratio-finite[s={s:g}]', 'norms.equivalence', 0.0 if finite else 1.0, 0.0))
        if not finite:
            brackets[str(s)] = None
            continue
        ledger.add(Check.bound(
            f'norms.bracket-width[s={s:g}]', 'norms.equivalence-bracket', ratios.max() / ratios.min(), NORM_BRACKET,
        ))
        brackets[str(s)] = [float(ratios.min()), float(ratios.max())]
    ledger.record('grid', grid)
    ledger.record('brackets', brackets)
    return [ledger]


SUITES = {
    'degree': degree_suite,
    'half': half_suite,
    'small': small_suite,
    'vmo': vmo_suite,
    'kernel': kernel_suite,
    'sweep': sweep_suite,
    'r1': r1_suite,
    'theorem3': analytic_part_suite,
    'norms': norms_suite,
}


def run_suite(cfg):
    """Returns the report and the sweep tables (empty unless the sweep suite ran)."""
    report = VerificationReport(cfg)
    tables = []
    for name in cfg.ordered_suites:
        rng = make_rng((cfg.seed, SUITE_ORDER.index(name)))
        result = SUITES[name](cfg, rng)
        if name == 'sweep':
            result, tables = result
        report.ledgers.extend(result)
        failed = sum(len(ledger.failures()) for ledger in result)
        logger.info("suite %s: %d ledgers, %d failed checks", name, len(result), failed)
    return report, tables
