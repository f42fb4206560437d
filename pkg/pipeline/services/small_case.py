# pipeline/services/small_case.py
"""Energy bounds for 0 < s < 1 once the argument of f has been made small.

The chain runs on g = f e^{-i psi} from reduce_argument. Each stage reports the
dyadic one-sided bound for H, the quadratic against cubic Littlewood-Paley ledger
of the phase Phi = phi_eps + H(log rho) of H, and the pair-integral inequality that
feeds that ledger.
"""
import logging

import numpy as np

from core.types import Check, CheckLedger
from degree.services.winding import phase_lift
from norms.services.oscillation import bmo_norm
from norms.services.quadrature import capped_weights, lag_sum, power_difference
from pipeline.services.half_case import block_chain, require_degree_zero, tiled_blocks
from pipeline.services.polar import build_schedule
from pipeline.services.reduction import reduce_argument
from pipeline.types import PipelineConfig
from spectrum.exceptions import CircleMapError, PreconditionError
from spectrum.services.generators import make_rng
from spectrum.services.transforms import analyze, hilbert_samples, project_samples
from spectrum.types import CircleSamples

logger = logging.getLogger(__name__)

ANCHOR = 'small'
PAIR_SAMPLES = 10 ** 6


def dyadic_constant(s):
    """4^{s+1} / (1 - 4^{-s})."""
    return 4 ** (s + 1) / (1 - 4 ** (-s))


def pair_inequality(rng=None, count=PAIR_SAMPLES, bound=10.0):
    """|u - v| <= |e^{iu} - e^{iv}| + |u - v|^{3/2} on random pairs; returns (violations, worst margin)."""
    rng = rng if rng is not None else make_rng(0)
    u = rng.uniform(-bound, bound, count)
    v = rng.uniform(-bound, bound, count)
    gap = np.abs(u - v)
    margin = np.abs(np.exp(1j * u) - np.exp(1j * v)) + gap ** 1.5 - gap
    return int(np.sum(margin < -1e-12)), float(margin.min())


def phase_of_H(stage):
    """Phi = phi_eps + H(log rho), so that H = e^{i Phi}."""
    log_rho = CircleSamples(np.log(stage.polar.rho.values))
    return CircleSamples(stage.polar.phi.periodic_part().values + hilbert_samples(log_rho).values)


def littlewood_paley_ledger(phase, s):
    """Dyadic pieces of a real phase: quadratic sum_k 4^{ks}||P_k||_2^2 and cubic sum_k 4^{ks}||P_k||_3^3."""
    quadratic = cubic = 0.0
    worst_ratio, holder_gap = 0.0, np.inf
    for lo, hi, tail in tiled_blocks(phase.N // 2 - 1):
        block = 2 * project_samples(phase, lo, hi).values.real
        weight = (2 * tail) ** (2 * s)
        l2 = float(np.mean(block ** 2))
        l3 = float(np.mean(np.abs(block) ** 3))
        quadratic += weight * l2
        cubic += weight * l3
        if l2 > 0:
            worst_ratio = max(worst_ratio, l3 / l2)
            holder_gap = min(holder_gap, float(np.max(np.abs(block))) * l2 - l3)
    return quadratic, cubic, worst_ratio, (0.0 if np.isinf(holder_gap) else holder_gap)


def stage_checks(g, stage, s, weighted_g, bmo_g, cfg, workers):
    gated = stage.passes_gate(cfg.rho_gate)
    tag = f'eps={stage.epsilon:g}'
    H_coeffs = analyze(stage.H.base)
    n, power = H_coeffs.indices, H_coeffs.power()
    weights = np.abs(n).astype(float) ** (2 * s)
    one_sided = float(np.sum(np.where(n > 0, weights, 0.0) * power))
    two_sided = float(np.sum(weights * power))

    rows = block_chain(g, stage)
    majorant = float(sum((2 * row['tail']) ** (2 * s) * row['H_block'] ** 2 for row in rows))
    closing = dyadic_constant(s) * weighted_g

    checks = [
        Check.bound(
            f'small.dyadic-majorant[{tag}]', f'{ANCHOR}.weighted-block-sum', one_sided, majorant,
            1e-12 * max(1.0, majorant), gated=gated,
        ),
        Check.bound(
            f'small.inverse-modulus[{tag}]', f'{ANCHOR}.inverse-modulus-at-most-two',
            stage.polar.inverse_sup, 2.0, gated=gated,
        ),
        Check.bound(
            f'small.one-sided-bound[{tag}]', f'{ANCHOR}.one-sided-dyadic-bound', one_sided, closing,
            cfg.bound_slack * closing + 1e-12, gated=gated,
        ),
    ]

    phase = phase_of_H(stage)
    quadratic, cubic, block_ratio, holder_gap = littlewood_paley_ledger(phase, s)
    checks.append(Check.bound(
        f'small.block-holder[{tag}]', f'{ANCHOR}.cubic-below-sup-times-quadratic', -holder_gap, 0.0,
        1e-12 * max(1.0, quadratic), gated=gated,
    ))
    checks.append(Check.bound(
        f'small.block-small[{tag}]', f'{ANCHOR}.cubic-over-quadratic-per-block', block_ratio, cfg.delta0,
        gated=False, note='worst ||P_k Phi||_3^3 / ||P_k Phi||_2^2',
    ))
    checks.append(Check.bound(
        f'small.absorption[{tag}]', f'{ANCHOR}.quadratic-absorbs-cubic', cfg.absorption_factor * cubic,
        quadratic, gated=False, note=f'fitted B={cfg.fitted_B:g}, c0={cfg.fitted_c0:g}',
    ))

    Ns = stage.H.N
    pair_weights = capped_weights(Ns, Ns // 4, s)
    phase_energy = lag_sum(phase.values, pair_weights, power_difference(2), workers)
    map_energy = lag_sum(stage.H.values, pair_weights, power_difference(2), workers)
    cubic_energy = lag_sum(phase.values, pair_weights, power_difference(3), workers)
    checks.append(Check.bound(
        f'small.pair-integral[{tag}]', f'{ANCHOR}.phase-energy-below-map-plus-cubic',
        phase_energy, map_energy + cubic_energy, 1e-12 * max(1.0, phase_energy), gated=gated,
    ))

    try:
        winding = phase_lift(stage.H).winding
    except CircleMapError as exc:
        logger.warning("cannot lift H at %s: %s", tag, exc)
        winding = stage.polar.phi.winding
    checks.append(Check.residual(f'small.degree[{tag}]', f'{ANCHOR}.degree-preserved', abs(winding), 0.0, gated=gated))

    bmo_phase = bmo_norm(phase)
    summary = stage.summary(cfg.rho_gate)
    summary.update({
        'one_sided': one_sided,
        'two_sided': two_sided,
        'dyadic_majorant': majorant,
        'quadratic': quadratic,
        'cubic': cubic,
        'absorption_margin': quadratic - cfg.absorption_factor * cubic,
        'phase_energy': phase_energy,
        'map_energy': map_energy,
        'cubic_energy': cubic_energy,
        'bmo_ratio': bmo_phase / bmo_g if bmo_g > 0 else 0.0,
        'l2_distance': g.l2_distance(stage.H.values),
    })
    return checks, summary


def verify_small_case(f, s, cfg=None, workers=None, rng=None):
    cfg = cfg or PipelineConfig()
    if not 0 < s < 1:
        raise PreconditionError(f"the small-argument chain needs 0 < s < 1, got s={s}")
    require_degree_zero(analyze(f.base), "the small-argument chain")

    reduction = reduce_argument(f, cfg.delta0)
    g = reduction.g
    phase = CircleSamples(phase_lift(g).values)
    sup_phase = float(np.max(np.abs(phase.values)))
    bmo_g = bmo_norm(phase)
    if sup_phase >= cfg.delta0:
        raise PreconditionError(f"reduced argument has sup-norm {sup_phase:.4g} >= delta0={cfg.delta0}")
    if bmo_g >= cfg.delta0:
        raise PreconditionError(f"reduced argument has BMO estimate {bmo_g:.4g} >= delta0={cfg.delta0}")

    coeffs = analyze(g.base)
    n, power = coeffs.indices, coeffs.power()
    weights = np.abs(n).astype(float) ** (2 * s)
    weighted_g = float(np.sum(np.where(n > 0, weights, 0.0) * power))
    two_sided_g = float(np.sum(weights * power))

    ledger = CheckLedger('small-case')
    ledger.record('s', s)
    ledger.record('N', f.N)
    ledger.record('reduction_cutoff', reduction.cutoff)
    ledger.record('reduced_sup', sup_phase)
    ledger.record('reduced_bmo', bmo_g)
    ledger.record('one_sided', weighted_g)
    ledger.record('two_sided', two_sided_g)
    ledger.record('dyadic_constant', dyadic_constant(s))

    stages = []
    for epsilon, stage in zip(cfg.eps_schedule, build_schedule(g, cfg, workers)):
        if stage is None:
            stages.append({'epsilon': epsilon, 'skipped': 'modulus collapsed'})
            continue
        checks, summary = stage_checks(g, stage, s, weighted_g, bmo_g, cfg, workers)
        ledger.extend(checks)
        stages.append(summary)
        logger.info(
            "small case s=%g eps=%g: one-sided %.6g, absorption margin %.4g, gated=%s",
            s, epsilon, summary['one_sided'], summary['absorption_margin'], summary['gated'],
        )
    ledger.record('stages', stages)

    gated = [row for row in stages if row.get('gated')]
    if not gated:
        logger.warning("no stage passed the modulus gate %.3g; bounds are informational only", cfg.rho_gate)
    else:
        sums = [row['two_sided'] for row in gated]
        top = max(sums)
        spread = (top - min(sums)) / max(top, 1e-12)
        ledger.record('uniform_two_sided', top)
        ledger.record('uniform_ratio', top / weighted_g if weighted_g > 0 else 0.0)
        ledger.add(Check.bound(
            'small.uniformity', f'{ANCHOR}.epsilon-uniform-bound', spread, cfg.uniformity_tol,
            note=f'{len(gated)} gated stages',
        ))
        finest = gated[-1]['two_sided']
        ledger.add(Check.bound(
            'small.convergence', f'{ANCHOR}.limit-two-sided',
            abs(finest - two_sided_g), cfg.uniformity_tol * max(two_sided_g, 1e-300), gated=False,
            note='finest gated stage against the reduced map',
        ))

    violations, worst = pair_inequality(rng)
    ledger.record('pair_worst_margin', worst)
    ledger.add(Check.residual('small.pair-inequality', f'{ANCHOR}.pointwise-phase-inequality', violations, 0))
    return ledger
