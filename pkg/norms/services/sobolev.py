# norms/services/sobolev.py
import logging

import numpy as np

from norms.services.quadrature import capped_weights, lag_sum, power_difference
from norms.types import SobolevParams
from spectrum.exceptions import PreconditionError

logger = logging.getLogger(__name__)


def spectral_weights(indices, s, n_cut=None):
    """|n|^{2s}, or (|n| ^ n_cut)^{2s}; n = 0 always weighs 0."""
    base = np.abs(indices).astype(float)
    if n_cut is not None:
        base = np.minimum(base, n_cut)
    weights = base ** (2 * s)
    weights[indices == 0] = 0.0
    return weights


def sobolev_spectral(coeffs, params: SobolevParams):
    n = coeffs.indices
    weights = spectral_weights(n, params.s, params.n_cut)
    if params.side == 'one':
        weights = np.where(n > 0, weights, 0.0)
    return float(np.sum(weights * coeffs.power()))


def sobolev_norm(coeffs, s, side='two'):
    """Square root of the spectral seminorm sum."""
    return float(np.sqrt(sobolev_spectral(coeffs, SobolevParams(s=s, side=side))))


def sobolev_integral(samples, s, N, workers=None):
    """Double integral of |f(t1) - f(t2)|^2 against min(N^{1+2s}, ||t1 - t2||^{-1-2s})."""
    if not 0 < s < 1:
        raise PreconditionError(f"the integral form needs 0 < s < 1, got s={s}")
    if N < 1:
        raise PreconditionError(f"frequency scale must be positive, got {N}")
    weights = capped_weights(samples.N, N, s)
    value = lag_sum(samples.values, weights, power_difference(2), workers)
    logger.debug("integral H^%g form at scale %d over %d samples: %.6g", s, N, samples.N, value)
    return value


def equivalence_ratio(samples, coeffs, s, N, workers=None):
    """Integral form over the matching truncated spectral sum; nan when both vanish."""
    spectral = sobolev_spectral(coeffs, SobolevParams(s=s, side='two', n_cut=N))
    if spectral == 0:
        return float('nan')
    return sobolev_integral(samples, s, N, workers) / spectral
