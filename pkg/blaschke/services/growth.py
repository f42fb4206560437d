# blaschke/services/growth.py
"""Greedy construction of dilated Blaschke products whose weighted norm grows.

Stage k multiplies C_{k-1} by B_r(z^{nu_k}) with a single zero at radius r and
nu_{k-1} | nu_k. Candidates are tried smallest dilation first, then by radius,
and the first one reaching growth * ||C_{k-1}||_omega is kept.
"""
import logging
import math

import numpy as np
from django.conf import settings
from scipy.signal import fftconvolve

from blaschke.services.products import factor_coeffs
from blaschke.types import BlaschkeSpec, BlaschkeStage, GrowthTrace
from core.types import Check, CheckLedger
from norms.services.weighted import weighted_norm_analytic
from spectrum.exceptions import PreconditionError

logger = logging.getLogger(__name__)

# factor coefficients past r^j < TRUNCATION are dropped
TRUNCATION = 1e-17


def factor_terms(r):
    return math.ceil(math.log(TRUNCATION) / math.log(r)) + 1


def dilated_factor(r, nu, bandwidth):
    """Taylor coefficients 0..bandwidth of B_r(z^nu)."""
    terms = min(factor_terms(r), bandwidth // nu + 1)
    values = np.zeros(bandwidth + 1, dtype=np.complex128)
    values[np.arange(terms) * nu] = factor_coeffs(r, terms)
    return values


def grow_weighted_norm(weight, stages, growth, radii=None, multipliers=None, max_bandwidth=None):
    if not weight.is_nondecreasing():
        raise PreconditionError("the weighted-norm construction needs a nondecreasing weight")
    if growth <= 1:
        raise PreconditionError(f"growth factor must exceed 1, got {growth}")
    if stages < 1:
        raise PreconditionError(f"need at least one stage, got {stages}")
    radii = list(radii or settings.R1_RADII)
    multipliers = sorted(multipliers or settings.R1_MULTIPLIERS)
    cap = int(max_bandwidth or settings.R1_MAX_BANDWIDTH)
    if any(not 0 < r < 1 for r in radii) or any(int(m) < 2 for m in multipliers):
        raise PreconditionError("radii must lie in (0, 1) and multipliers must be at least 2")

    current = np.ones(1, dtype=np.complex128)
    norm = weighted_norm_analytic(current, weight)
    trace = GrowthTrace(weight.family, growth, stages, norm)
    chosen = []
    nu_prev = 1

    for k in range(1, stages + 1):
        target = growth * norm
        best, found = 0.0, None
        for m in multipliers:
            nu = nu_prev * int(m)
            for r in radii:
                degree = current.size - 1
                if degree + nu > cap:
                    continue
                bandwidth = min(cap, degree + nu * (factor_terms(r) - 1))
                product = fftconvolve(current, dilated_factor(r, nu, bandwidth))[:bandwidth + 1]
                value = weighted_norm_analytic(product, weight)
                best = max(best, value)
                if value >= target:
                    found = (nu, r, product, value)
                    break
            if found:
                break

        if found is None:
            trace.diagnostic = (
                f"stage {k}: no candidate among radii {radii} and multipliers {multipliers} reaches "
                f"{target:.6g}; best weighted norm {best:.6g} (the weight grows too slowly for this candidate set)"
            )
            logger.warning("weighted-norm growth stopped: %s", trace.diagnostic)
            break

        nu_prev, r, current, norm = found
        chosen.append(BlaschkeStage((r,), nu_prev))
        trace.norms.append(norm)
        trace.bandwidths.append(current.size - 1)
        logger.info("stage %d: nu=%d r=%g weighted norm %.6g", k, nu_prev, r, norm)

    trace.spec = BlaschkeSpec(tuple(chosen))
    return trace


def growth_ledger(trace, expect_success=True):
    """Checks on a finished trace; an expected failure passes when the constructor reports exhaustion."""
    ledger = CheckLedger(f'r1[{trace.family}, growth={trace.growth:g}]')
    for key, value in trace.as_dict().items():
        ledger.record(key, value)
    if not expect_success:
        ledger.add(Check.residual(
            'r1.exhaustion-reported', 'r1.bounded-weight-ceiling', float(trace.success), 0.0,
            note=trace.diagnostic,
        ))
        return ledger
    ledger.add(Check.residual(
        'r1.stages-completed', 'r1.norm-divergence', float(trace.requested - len(trace.norms)), 0.0,
        note=trace.diagnostic,
    ))
    for k, ratio in enumerate(trace.ratios, start=1):
        ledger.add(Check.bound(
            f'r1.growth[stage={k}]', 'r1.norm-divergence', trace.growth, ratio, 1e-12 * trace.growth,
        ))
    chain = trace.spec.nu_chain
    broken = sum(1 for a, b in zip(chain, chain[1:]) if b % a)
    ledger.add(Check.residual('r1.divisibility', 'r1.dilation-chain', float(broken), 0.0))
    return ledger
