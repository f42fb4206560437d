# pipeline/services/vmo.py
import logging

import numpy as np

from core.types import Check, CheckLedger
from norms.services.oscillation import bmo_norm, dyadic_scales, vmo_profile
from pipeline.services.polar import build_schedule
from pipeline.services.reduction import reduce_argument
from pipeline.services.small_case import phase_of_H, verify_small_case
from pipeline.types import PipelineConfig
from spectrum.exceptions import NotVMOError
from spectrum.services.transforms import hilbert_samples
from spectrum.types import CircleSamples

logger = logging.getLogger(__name__)

ANCHOR = 'vmo'


def vmo_screen(f, delta0):
    profile = vmo_profile(f.base, dyadic_scales(f.base))
    threshold = delta0 / 2
    if profile.tail >= threshold:
        raise NotVMOError(profile.tail, threshold)
    return profile


def vmo_entry(f, cfg=None, s=0.25, workers=None, rng=None):
    """Screen f at grid resolution, check the modulus and oscillation chain, then run the small case."""
    cfg = cfg or PipelineConfig()
    profile = vmo_screen(f, cfg.delta0)
    ledger = CheckLedger('vmo-entry')
    ledger.record('profile', profile.as_rows())
    ledger.record('tail_oscillation', profile.tail)
    ledger.add(Check.bound(
        'vmo.windowwise', f'{ANCHOR}.modulus-gap-below-oscillation', -float(profile.slack.min()), 0.0, f.tol,
        note='smallest windowwise oscillation minus (1 - |window mean|)',
    ))

    g = reduce_argument(f, cfg.delta0).g
    gaps = []
    for epsilon, stage in zip(cfg.eps_schedule, build_schedule(g, cfg, workers)):
        if stage is None:
            continue
        tag = f'eps={epsilon:g}'
        gaps.append((epsilon, stage.polar.gap))
        phase = CircleSamples(stage.polar.phi.periodic_part().values)
        conjugate = hilbert_samples(CircleSamples(np.log(stage.polar.rho.values)))
        total = bmo_norm(phase_of_H(stage))
        parts = bmo_norm(phase), bmo_norm(conjugate)
        ledger.add(Check.bound(
            f'vmo.bmo-triangle[{tag}]', f'{ANCHOR}.oscillation-subadditive', total, sum(parts), 1e-12,
        ))
        ledger.add(Check.bound(
            f'vmo.bmo-small[{tag}]', f'{ANCHOR}.phase-oscillation-below-delta0', total, cfg.delta0,
            gated=stage.passes_gate(cfg.rho_gate),
        ))
    ledger.record('modulus_gaps', [{'epsilon': eps, 'gap': gap} for eps, gap in gaps])
    for (eps_a, gap_a), (eps_b, gap_b) in zip(gaps, gaps[1:]):
        ledger.add(Check.bound(
            f'vmo.modulus-trend[eps={eps_b:g}]', f'{ANCHOR}.modulus-converges', gap_b, gap_a, 1e-10,
            note=f'against eps={eps_a:g}',
        ))

    small = verify_small_case(f, s, cfg, workers, rng)
    ledger.extend(small.checks)
    ledger.record('small_case', small.values)
    logger.info("VMO entry: tail oscillation %.3g, %d stages, small case passed=%s", profile.tail, len(gaps), small.passed)
    return ledger
