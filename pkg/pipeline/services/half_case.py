# pipeline/services/half_case.py
"""Energy bounds for the s = 1/2 case, stage by stage along the epsilon schedule.

For a degree-zero f with C = sum_{n>0} n |a_n|^2, every stage H = h R is checked
against the anti-analytic block identity, the dyadic chain with the factor
||1/rho|| <= 2, and the closing bounds 16C (one-sided) and 32C (two-sided).
"""
import logging

import numpy as np

from core.types import Check, CheckLedger
from degree.services.spectral import check_symmetric_energy_identity, degree_spectral, spectral_sum
from degree.services.winding import phase_lift
from pipeline.services.polar import build_schedule
from pipeline.types import PipelineConfig
from spectrum.exceptions import CircleMapError, PreconditionError
from spectrum.services.transforms import analyze, dyadic_blocks, hilbert_samples, project_samples
from spectrum.types import CircleSamples

logger = logging.getLogger(__name__)

ANCHOR = 'half'


def tiled_blocks(M):
    """(lo, hi, tail) for the dyadic tiles of 1..M; tail = 2^{k-1} <= lo and hi <= 2 tail."""
    for lo, hi in dyadic_blocks(M)[1:]:
        yield lo, hi, max(1, lo - 1)


def require_degree_zero(coeffs, operation):
    result = degree_spectral(coeffs)
    if result.rounded != 0:
        raise PreconditionError(
            f"{operation} needs a degree-zero map, got degree {result.rounded}; "
            f"shift it with normalize_degree(coeffs, {result.rounded}) first"
        )
    return result


def block_chain(f, stage):
    """Per dyadic tile: identity residual and the norms of the bound chain."""
    M = f.N // 2 - 1
    tail_f_cache = {}
    rows = []
    for lo, hi, tail in tiled_blocks(M):
        tail_h = project_samples(stage.h, lo=tail)
        product = stage.outer * tail_h
        H_block = project_samples(stage.H.base, lo, hi)
        if tail not in tail_f_cache:
            tail_f_cache[tail] = project_samples(f.base, lo=tail).l2_norm()
        rows.append({
            'lo': lo,
            'hi': hi,
            'tail': tail,
            'residual': H_block.l2_distance(project_samples(product, lo, hi)),
            'H_block': H_block.l2_norm(),
            'product': product.l2_norm(),
            'tail_h': tail_h.l2_norm(),
            'tail_f': tail_f_cache[tail],
        })
    return rows


def _worst(rows, lhs_key, rhs):
    return min(rows, key=lambda row: rhs(row) - row[lhs_key])


def stage_checks(f, stage, C, cfg, f_winding):
    gated = stage.passes_gate(cfg.rho_gate)
    tag = f'eps={stage.epsilon:g}'
    inverse = stage.polar.inverse_sup
    rows = block_chain(f, stage)
    H_coeffs = analyze(stage.H.base)
    n, power = H_coeffs.indices, H_coeffs.power()
    positive = float(np.sum(n[n > 0] * power[n > 0]))
    two_sided = float(np.sum(np.abs(n) * power))
    majorant = float(sum(2 * row['tail'] * row['H_block'] ** 2 for row in rows))
    slack = cfg.bound_slack

    checks = []
    if rows:
        worst = max(rows, key=lambda row: row['residual'])
        checks.append(Check.residual(
            f'half.dyadic-identity[{tag}]', f'{ANCHOR}.dyadic-identity', worst['residual'], cfg.identity_tol,
            gated=gated, note=f"worst block [{worst['lo']}, {worst['hi']}]",
        ))
        link = _worst(rows, 'product', lambda row: inverse * row['tail_h'])
        checks.append(Check.bound(
            f'half.outer-factor[{tag}]', f'{ANCHOR}.inverse-modulus-factor',
            link['product'], inverse * link['tail_h'], 1e-12 * max(1.0, link['product']), gated=gated,
        ))
        link = _worst(rows, 'tail_h', lambda row: row['tail_f'])
        checks.append(Check.bound(
            f'half.smoothing-tail[{tag}]', f'{ANCHOR}.smoothing-contracts-tails',
            link['tail_h'], link['tail_f'], 1e-12 * max(1.0, link['tail_h']), gated=gated,
        ))
        link = _worst(rows, 'H_block', lambda row: 2 * row['tail_f'])
        checks.append(Check.bound(
            f'half.block-bound[{tag}]', f'{ANCHOR}.block-bound-factor-two',
            link['H_block'], 2 * link['tail_f'], cfg.identity_tol, gated=gated,
            note=f"block [{link['lo']}, {link['hi']}]",
        ))
    checks.append(Check.bound(
        f'half.inverse-modulus[{tag}]', f'{ANCHOR}.inverse-modulus-at-most-two', inverse, 2.0, gated=gated,
    ))
    checks.append(Check.bound(
        f'half.dyadic-majorant[{tag}]', f'{ANCHOR}.weighted-block-sum', positive, majorant,
        1e-12 * max(1.0, majorant), gated=gated,
    ))
    checks.append(Check.bound(
        f'half.one-sided-16C[{tag}]', f'{ANCHOR}.one-sided-16C', positive, 16 * C, slack * 16 * C + 1e-12,
        gated=gated,
    ))

    try:
        identity = check_symmetric_energy_identity(H_coeffs)
        checks.append(Check.residual(
            f'half.energy-identity[{tag}]', f'{ANCHOR}.symmetric-energy-identity',
            identity.difference, identity.tolerance * max(1.0, identity.two_sided), gated=gated,
        ))
    except PreconditionError as exc:
        checks.append(Check.residual(
            f'half.energy-identity[{tag}]', f'{ANCHOR}.symmetric-energy-identity',
            abs(spectral_sum(H_coeffs)), 1e-8 * max(1.0, two_sided),
            gated=gated, note=str(exc),
        ))
    checks.append(Check.bound(
        f'half.two-sided-32C[{tag}]', f'{ANCHOR}.two-sided-32C', two_sided, 32 * C, slack * 32 * C + 1e-12,
        gated=gated,
    ))

    try:
        H_winding = phase_lift(stage.H).winding
    except CircleMapError as exc:
        logger.warning("cannot lift H at %s: %s", tag, exc)
        H_winding = degree_spectral(H_coeffs).rounded
    checks.append(Check.residual(
        f'half.degree[{tag}]', f'{ANCHOR}.degree-preserved',
        abs(H_winding - f_winding), 0.0, gated=gated,
    ))

    log_rho = CircleSamples(np.log(stage.polar.rho.values))
    distance = f.l2_distance(stage.H.values)
    phase_distance = f.l2_distance(stage.polar.phi.exp())
    conjugate = hilbert_samples(log_rho).l2_norm()
    checks.append(Check.bound(
        f'half.l2-distance[{tag}]', f'{ANCHOR}.l2-convergence', distance, phase_distance + conjugate,
        1e-12, gated=gated,
    ))
    summary = stage.summary(cfg.rho_gate)
    summary.update({
        'one_sided': positive,
        'two_sided': two_sided,
        'l2_distance': distance,
        'blocks': len(rows),
        'H_winding': H_winding,
    })
    return checks, summary


def verify_half_case(f, cfg=None, workers=None):
    cfg = cfg or PipelineConfig()
    coeffs = analyze(f.base)
    require_degree_zero(coeffs, "the s = 1/2 chain")
    n, power = coeffs.indices, coeffs.power()
    C = float(np.sum(n[n > 0] * power[n > 0]))
    two_sided = float(np.sum(np.abs(n) * power))
    f_winding = phase_lift(f).winding

    ledger = CheckLedger('half-case')
    ledger.record('N', f.N)
    ledger.record('C', C)
    ledger.record('two_sided', two_sided)
    ledger.record('ratio', two_sided / C if C > 0 else 0.0)

    stages = []
    for epsilon, stage in zip(cfg.eps_schedule, build_schedule(f, cfg, workers)):
        if stage is None:
            stages.append({'epsilon': epsilon, 'skipped': 'modulus collapsed'})
            continue
        checks, summary = stage_checks(f, stage, C, cfg, f_winding)
        ledger.extend(checks)
        stages.append(summary)
        logger.info(
            "half case eps=%g: one-sided %.6g vs 16C=%.6g, gated=%s",
            epsilon, summary['one_sided'], 16 * C, summary['gated'],
        )
    ledger.record('stages', stages)

    distances = [row['l2_distance'] for row in stages if row.get('gated')]
    if len(distances) >= 2:
        ledger.add(Check.bound(
            'half.l2-trend', f'{ANCHOR}.l2-convergence-trend', distances[-1], distances[0], 1e-12,
            note='distance at the finest gated epsilon against the coarsest',
        ))
    if not any(row.get('gated') for row in stages):
        logger.warning("no stage passed the modulus gate %.3g; bounds are informational only", cfg.rho_gate)
    ledger.add(Check.bound(
        'half.verdict', f'{ANCHOR}.two-sided-32C', two_sided, 32 * C, cfg.bound_slack * 32 * C + 1e-12,
    ))
    return ledger
