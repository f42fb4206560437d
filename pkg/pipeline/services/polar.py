# pipeline/services/polar.py
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from django.conf import settings

from degree.services.winding import phase_lift
from pipeline.types import PipelineConfig, PolarParts, Stage
from spectrum.exceptions import AliasingError, ModulusCollapseError
from spectrum.services.transforms import hilbert_samples, smooth
from spectrum.types import CircleSamples, SmootherSpec, UnimodularSamples

logger = logging.getLogger(__name__)


def polar(h, rho_floor=None):
    rho_floor = settings.PIPELINE_RHO_FLOOR if rho_floor is None else rho_floor
    modulus = np.abs(h.values)
    smallest = float(np.min(modulus))
    if smallest <= rho_floor:
        raise ModulusCollapseError(smallest, rho_floor)
    return PolarParts(CircleSamples(modulus), phase_lift(h))


def outer(rho):
    """R = exp(-log rho + i H(log rho)): |R| = 1/rho and the spectrum of R sits at n <= 0."""
    values = np.asarray(rho.values if hasattr(rho, 'values') else rho, dtype=float)
    if np.min(values) <= 0:
        raise AliasingError("the outer factor needs a modulus that stays away from zero")
    log_rho = CircleSamples(np.log(values))
    conjugate = hilbert_samples(log_rho).values
    return CircleSamples(np.exp(-log_rho.values + 1j * conjugate))


def build_stage(f, epsilon, cfg=None):
    cfg = cfg or PipelineConfig()
    spec = SmootherSpec(family=cfg.family, epsilon=epsilon)
    h = smooth(f.base, spec)
    parts = polar(h, cfg.rho_floor)
    R = outer(parts.rho)
    H = UnimodularSamples(h * R, cfg.unimodular_tol)
    logger.debug(
        "stage eps=%g (cutoff %d): min rho %.4f, ||1 - rho|| %.3g",
        epsilon, spec.cutoff, float(np.min(parts.rho.values)), parts.gap,
    )
    return Stage(float(epsilon), spec.cutoff, h, parts, R, H)


def build_H(f, eps, cfg=None):
    return build_stage(f, eps, cfg).H


def build_schedule(f, cfg, workers=None):
    """One stage per epsilon, in schedule order; a collapsed modulus yields None for that epsilon."""

    def attempt(epsilon):
        try:
            return build_stage(f, epsilon, cfg)
        except ModulusCollapseError as exc:
            logger.warning("skipping eps=%g: %s", epsilon, exc)
            return None

    workers = max(1, min(workers or settings.US_THREADS, len(cfg.eps_schedule)))
    if workers == 1:
        return [attempt(eps) for eps in cfg.eps_schedule]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(attempt, cfg.eps_schedule))
