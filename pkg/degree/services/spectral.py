# degree/services/spectral.py
import logging

import numpy as np
from django.conf import settings

from core.types import Check
from degree.types import DegreeResult, EnergyIdentity
from spectrum.exceptions import PreconditionError
from spectrum.services.transforms import energy_outside
from spectrum.types import FourierCoeffs

logger = logging.getLogger(__name__)


def spectral_sum(coeffs):
    return float(np.sum(coeffs.indices * coeffs.power()))


def degree_spectral(coeffs, winding=None):
    """Degree as sum n|a_n|^2, rounded to the nearest integer.

    Truncation at M perturbs the sum, so a large residual or a heavy coefficient
    tail is logged rather than raised.
    """
    total = spectral_sum(coeffs)
    rounded = int(np.rint(total))
    residual = abs(total - rounded)
    tail = energy_outside(coeffs, 0.9)
    if residual > settings.DEGREE_RESIDUAL_WARN:
        logger.warning(
            "spectral degree sum %.6f is %.3g away from the nearest integer %d; "
            "the map may not be resolved at M=%d", total, residual, rounded, coeffs.M,
        )
    if tail > settings.DEGREE_TAIL_WARN:
        logger.warning(
            "slow coefficient decay: sum |n||a_n|^2 over |n| > 0.9M is %.3g (M=%d)", tail, coeffs.M,
        )
    return DegreeResult(total, rounded, residual, winding, tail)


def check_symmetric_energy_identity(coeffs, tol=1e-8):
    result = degree_spectral(coeffs)
    if result.rounded != 0:
        raise PreconditionError(
            f"the symmetric energy identity needs a degree-zero map, got degree {result.rounded}; "
            f"shift the coefficients with normalize_degree(coeffs, {result.rounded}) first"
        )
    n = coeffs.indices
    power = coeffs.power()
    two_sided = float(np.sum(np.abs(n) * power))
    doubled_positive = 2.0 * float(np.sum(n[n > 0] * power[n > 0]))
    return EnergyIdentity(two_sided, doubled_positive, tol)


def shift_loss(coeffs, d):
    """Energy of the coefficients pushed outside [-M, M] by a shift of d."""
    if d == 0:
        return 0.0
    power = coeffs.power()
    return float(np.sum(power[:d]) if d > 0 else np.sum(power[d:]))


def normalize_degree(coeffs, d):
    """Coefficients of z^{-d} f: the new a_n is the old a_{n+d}."""
    d = int(d)
    if abs(d) > coeffs.M:
        raise PreconditionError(f"shift {d} exceeds bandwidth M={coeffs.M}")
    values = np.zeros_like(coeffs.values)
    size = values.size
    if d >= 0:
        values[:size - d] = coeffs.values[d:]
    else:
        values[-d:] = coeffs.values[:size + d]
    lost = shift_loss(coeffs, d)
    if lost > 0:
        logger.warning("degree shift by %d truncated energy %.3g at M=%d", d, lost, coeffs.M)
    return FourierCoeffs(coeffs.M, values)


def degree_gap_inequality(coeffs, tolerance=1e-12):
    """sum |n||a_n|^2 <= |deg| + 2 sum_{n>0} n|a_n|^2, with deg the spectral sum."""
    n = coeffs.indices
    power = coeffs.power()
    two_sided = float(np.sum(np.abs(n) * power))
    positive = float(np.sum(n[n > 0] * power[n > 0]))
    total = spectral_sum(coeffs)
    return Check.bound(
        'degree.gap', 'degree.two-sided-vs-one-sided',
        two_sided, abs(total) + 2 * positive, tolerance * max(1.0, two_sided),
    )
