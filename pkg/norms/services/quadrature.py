# norms/services/quadrature.py
"""Pair integrals over the torus on the uniform sample grid.

Every integral here has the form (1/N^2) sum_{j, m != 0} w_m F(values[j+m], values[j]),
so it is evaluated lag by lag. Lags are cut into fixed-size chunks; each chunk is
summed in lag order and the chunk totals are added in chunk order, which makes the
result identical for any worker count.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from django.conf import settings

logger = logging.getLogger(__name__)


def circle_distance(t):
    """||t|| = dist(t, 2 pi Z)."""
    t = np.mod(np.asarray(t, dtype=float) + np.pi, 2 * np.pi) - np.pi
    return np.abs(t)


def lag_distances(N):
    return circle_distance(2 * np.pi * np.arange(N) / N)


def capped_weights(N, scale, s):
    """min(scale^{1+2s}, ||t_m||^{-1-2s}) per lag; lag 0 is excluded with weight 0."""
    dist = lag_distances(N)
    weights = np.zeros(N)
    weights[1:] = np.minimum(float(scale) ** (1 + 2 * s), dist[1:] ** (-1 - 2 * s))
    return weights


def _chunk_total(values, weights, integrand, lags):
    total = 0.0
    for m in lags:
        if weights[m] == 0:
            continue
        shifted = np.roll(values, -m)
        total += weights[m] * float(np.sum(integrand(shifted, values)))
    return total


def lag_sum(values, weights, integrand, workers=None):
    """(1/N^2) sum over lags m and base points j of weights[m] * integrand(values[j+m], values[j])."""
    values = np.asarray(values)
    N = values.size
    chunk = settings.QUADRATURE_CHUNK
    shards = [range(start, min(start + chunk, N)) for start in range(1, N, chunk)]
    workers = max(1, min(workers or settings.US_THREADS, len(shards) or 1))
    if workers == 1 or len(shards) <= 1:
        totals = [_chunk_total(values, weights, integrand, lags) for lags in shards]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            totals = list(pool.map(lambda lags: _chunk_total(values, weights, integrand, lags), shards))
    logger.debug("pair quadrature over N=%d in %d shards with %d workers", N, len(shards), workers)
    return float(sum(totals)) / N ** 2


def power_difference(p):
    return lambda a, b: np.abs(a - b) ** p
