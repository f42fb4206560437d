# norms/services/oscillation.py
"""Grid estimators of mean oscillation. Every value is a lower bound of the true supremum."""
import logging

import numpy as np
from django.conf import settings

from norms.types import OscillationProfile
from spectrum.exceptions import PreconditionError

logger = logging.getLogger(__name__)


def default_widths(count=None):
    count = count or settings.BMO_WIDTHS
    return np.pi * 2.0 ** -np.arange(count)


def default_centers(count=None):
    count = count or settings.BMO_CENTERS
    return 2 * np.pi * np.arange(count) / count


def _half_width_samples(width, N):
    return min(int(np.floor(width * N / (2 * np.pi))), N // 2)


def window_statistics(values, center_indices, k):
    """Window mean and mean |f - mean| over samples center-k .. center+k (capped at N samples)."""
    N = values.size
    length = min(2 * k + 1, N)
    index = (np.asarray(center_indices)[:, None] - k + np.arange(length)[None, :]) % N
    windows = values[index]
    means = windows.mean(axis=1)
    oscillation = np.abs(windows - means[:, None]).mean(axis=1)
    return means, oscillation


def bmo_norm(samples, centers=None, widths=None):
    centers = default_centers() if centers is None else np.asarray(centers, dtype=float)
    widths = default_widths() if widths is None else np.asarray(widths, dtype=float)
    if np.any(widths <= 0) or np.any(widths > np.pi):
        raise PreconditionError("window half-widths must lie in (0, pi]")
    N = samples.N
    center_indices = np.rint(np.mod(centers, 2 * np.pi) * N / (2 * np.pi)).astype(int) % N
    best = 0.0
    for width in widths:
        k = _half_width_samples(width, N)
        if k < 1:
            logger.debug("skipping half-width %.3g below the grid spacing at N=%d", width, N)
            continue
        _, oscillation = window_statistics(samples.values, center_indices, k)
        best = max(best, float(oscillation.max()))
    return best


def vmo_profile(samples, scales):
    scales = np.asarray(scales, dtype=float)
    if scales.size == 0 or np.any(np.diff(scales) >= 0):
        raise PreconditionError("scales must be a nonempty strictly decreasing list")
    N = samples.N
    osc, gap, slack = [], [], []
    for width in scales:
        k = max(1, _half_width_samples(width, N))
        centers = np.arange(0, N, max(1, k // 2))
        means, oscillation = window_statistics(samples.values, centers, k)
        modulus_gap = 1.0 - np.abs(means)
        osc.append(float(oscillation.max()))
        gap.append(float(modulus_gap.max()))
        slack.append(float(np.min(oscillation - modulus_gap)))
    return OscillationProfile(scales, np.array(osc), np.array(gap), np.array(slack))


def dyadic_scales(samples, finest=2):
    """Half-widths pi, pi/2, ... down to `finest` grid spacings."""
    N = samples.N
    scales = [np.pi]
    while scales[-1] / 2 >= finest * 2 * np.pi / N:
        scales.append(scales[-1] / 2)
    return np.array(scales)
