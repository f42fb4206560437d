# pipeline/services/reduction.py
import logging
import math

import numpy as np
from django.conf import settings

from degree.services.winding import phase_lift
from pipeline.types import ArgumentReduction
from spectrum.exceptions import PreconditionError, ReductionError
from spectrum.services.transforms import analyze, smooth
from spectrum.types import CircleSamples, SmootherSpec, UnimodularSamples

logger = logging.getLogger(__name__)


def required_cutoff(phase, delta0):
    """Smallest L with 4 sum_{|n| > L} |phi_n| < delta0, or None if the grid cannot carry it.

    The de la Vallee-Poussin mean of cutoff L is off by at most four times the best
    approximation error of order L, which the coefficient tail bounds.
    """
    coeffs = analyze(phase)
    magnitude = np.abs(coeffs.values)
    n = np.abs(coeffs.indices)
    by_order = np.bincount(n, weights=magnitude, minlength=coeffs.M + 1)
    tails = np.concatenate((np.cumsum(by_order[::-1])[::-1][1:], [0.0]))
    feasible = np.nonzero(4 * tails < delta0)[0]
    return int(feasible[0]) if feasible.size else None


def reduce_argument(f, delta0=None, max_cutoff=None):
    """Split off a band-limited phase: f = g e^{i psi} with ||arg g||_inf < delta0.

    The cutoff starts at ceil(8 / delta0) and doubles until the residual phase is
    small; the de la Vallee-Poussin support 2L has to stay inside the grid band.
    """
    delta0 = settings.PIPELINE_DELTA0 if delta0 is None else float(delta0)
    lift = phase_lift(f)
    if lift.winding != 0:
        raise PreconditionError(
            f"argument reduction needs a degree-zero map, got winding {lift.winding}"
        )
    phase = CircleSamples(lift.values)
    tol = f.tol
    if float(np.max(np.abs(phase.values))) < delta0:
        zero = CircleSamples(np.zeros(f.N))
        return ArgumentReduction(f, UnimodularSamples.from_phase(zero, tol), zero, 0, float(np.max(np.abs(phase.values))))

    limit = f.N // 4 - 1 if max_cutoff is None else min(int(max_cutoff), f.N // 4 - 1)
    cutoff = min(math.ceil(8 / delta0), limit)
    while True:
        psi = smooth(phase, SmootherSpec(family='vallee-poussin', epsilon=1.0 / cutoff))
        residual = float(np.max(np.abs(phase.values - psi.values)))
        logger.debug("argument reduction at cutoff %d: residual %.4g", cutoff, residual)
        if residual < delta0:
            break
        if cutoff >= limit:
            needed = required_cutoff(phase, delta0)
            raise ReductionError(residual, delta0, needed if needed is not None else f.N // 2, limit)
        cutoff = min(2 * cutoff, limit)

    multiplier = UnimodularSamples.from_phase(psi, tol)
    g = UnimodularSamples(CircleSamples(f.values * np.conj(multiplier.values)), tol)
    logger.info("reduced the argument below %.3g with cutoff %d (residual %.4g)", delta0, cutoff, residual)
    return ArgumentReduction(g, multiplier, psi, cutoff, residual)
