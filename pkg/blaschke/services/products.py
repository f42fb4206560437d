# blaschke/services/products.py
import logging
import math

import numpy as np
from django.conf import settings

from blaschke.types import BlaschkeSpec, BlaschkeStage, MoebiusParams, check_zeros
from degree.services.spectral import normalize_degree
from spectrum.exceptions import AliasingError, CircleMapError, PreconditionError
from spectrum.services.transforms import analyze
from spectrum.types import CircleSamples, FourierCoeffs

logger = logging.getLogger(__name__)

# boundary grid reaches M + GRID_DECAY / (1 - r), where r^{N - M} is below 1e-27
GRID_DECAY = 64


def _next_power_of_two(n):
    return 1 << max(2, math.ceil(math.log2(max(n, 4))))


def boundary_grid(zeros, M):
    radius = max((abs(z) for z in zeros), default=0.0)
    needed = max(2 * M + 2, M + GRID_DECAY / (1 - radius))
    N = _next_power_of_two(math.ceil(needed))
    if N > settings.BLASCHKE_MAX_GRID:
        raise AliasingError(
            f"a zero at radius {radius:.6g} needs {N} boundary samples, above the cap "
            f"{settings.BLASCHKE_MAX_GRID}; move the zero away from the circle"
        )
    return N


def blaschke_coeffs(zeros, M):
    """Taylor coefficients of prod (alpha - z) / (1 - conj(alpha) z), read off boundary samples."""
    try:
        zeros = check_zeros(zeros)
    except CircleMapError as exc:
        raise AliasingError(str(exc)) from exc
    N = boundary_grid(zeros, M)
    spec = BlaschkeSpec((BlaschkeStage(zeros, 1),)) if zeros else BlaschkeSpec()
    samples = CircleSamples(spec.boundary(2 * np.pi * np.arange(N) / N))
    coeffs = analyze(samples, M)
    negative = float(np.sum(coeffs.power()[coeffs.indices < 0]))
    if negative > 1e-10 * coeffs.energy():
        logger.warning("Blaschke coefficients leak %.3g energy to n < 0 at N=%d", negative, N)
    return coeffs


def factor_coeffs(alpha, length):
    """First `length` Taylor coefficients of (alpha - z) / (1 - conj(alpha) z), in closed form."""
    alpha = complex(alpha)
    values = np.empty(length, dtype=np.complex128)
    values[0] = alpha
    j = np.arange(1, length)
    values[1:] = -(1 - abs(alpha) ** 2) * np.conj(alpha) ** (j - 1)
    return values


def dilate(coeffs, nu, M_out=None):
    """Coefficients of f(z^nu): a_n moves to n*nu."""
    nu = int(nu)
    if nu < 1:
        raise PreconditionError(f"dilation must be a positive integer, got {nu}")
    M_out = nu * coeffs.M if M_out is None else int(M_out)
    if nu * coeffs.M > M_out:
        raise PreconditionError(
            f"dilating bandwidth {coeffs.M} by {nu} needs capacity {nu * coeffs.M}, got {M_out}"
        )
    out = np.zeros(2 * M_out + 1, dtype=np.complex128)
    out[coeffs.indices * nu + M_out] = coeffs.values
    return FourierCoeffs(M_out, out)


def reflected_boundary(coeffs):
    """From the coefficients of g, those of g(e^{-it}) and of e^{-it} g(e^{-it})."""
    reflected = coeffs.reflected()
    return reflected, normalize_degree(reflected.with_bandwidth(coeffs.M + 1), 1)


def moebius_minimum_bandwidth(p: MoebiusParams):
    return math.ceil(4 * p.k / (1 - p.a))


def moebius_tail_bandwidth(p: MoebiusParams, tail=1e-16):
    """Bandwidth past which the dropped coefficient energy a^{2j} is below `tail`."""
    terms = math.ceil(math.log(tail) / (2 * math.log(p.a))) + 1
    return max(p.k * terms, moebius_minimum_bandwidth(p))


def moebius_family(p: MoebiusParams, M):
    """e^{-ikt} (a - e^{ikt}) / (1 - a e^{ikt}) = a e^{-ikt} - (1 - a^2) sum_{j >= 0} a^j e^{ijkt}."""
    if moebius_minimum_bandwidth(p) > M:
        raise PreconditionError(
            f"a={p.a}, k={p.k} needs bandwidth M >= 4k/(1-a) = {moebius_minimum_bandwidth(p)}, got {M}"
        )
    values = np.zeros(2 * M + 1, dtype=np.complex128)
    values[M - p.k] = p.a
    j = np.arange(M // p.k + 1)
    values[M + j * p.k] = -(1 - p.a ** 2) * p.a ** j
    return FourierCoeffs(M, values)


def moebius_boundary(p: MoebiusParams, t):
    z = np.exp(1j * p.k * np.asarray(t, dtype=float))
    return np.conj(z) * (p.a - z) / (1 - p.a * z)
