# spectrum/services/transforms.py
import logging

import numpy as np

from spectrum.exceptions import AliasingError, PreconditionError
from spectrum.types import CircleSamples, FourierCoeffs

logger = logging.getLogger(__name__)


def signed_frequencies(N):
    """Integer frequency of every FFT bin; the Nyquist bin is reported as -N/2."""
    return np.fft.fftfreq(N, d=1.0 / N).astype(int)


def analyze(samples, M=None):
    N = samples.N
    if M is None:
        M = N // 2 - 1
    M = int(M)
    if M < 0:
        raise AliasingError(f"bandwidth must be nonnegative, got {M}")
    if 2 * M + 1 > N:
        raise AliasingError(
            f"bandwidth M={M} exceeds Nyquist for N={N} samples: need 2M+1 <= N"
        )
    spectrum = np.fft.fft(samples.values) / N
    return FourierCoeffs(M, spectrum[np.arange(-M, M + 1) % N])


def synthesize(coeffs, N):
    if N < 2 * coeffs.M + 2:
        raise AliasingError(
            f"{N} samples cannot carry bandwidth M={coeffs.M}: need N >= {2 * coeffs.M + 2}"
        )
    spectrum = np.zeros(N, dtype=np.complex128)
    spectrum[coeffs.indices % N] = coeffs.values
    return CircleSamples(np.fft.ifft(spectrum) * N)


def project(coeffs, lo=None, hi=None):
    """Keep a_n for lo <= n <= hi; None means unbounded on that side."""
    if lo is not None and hi is not None and lo > hi:
        raise PreconditionError(f"empty projection range [{lo}, {hi}]")
    n = coeffs.indices
    keep = np.ones(n.size, dtype=bool)
    if lo is not None:
        keep &= n >= lo
    if hi is not None:
        keep &= n <= hi
    return FourierCoeffs(coeffs.M, np.where(keep, coeffs.values, 0))


def dyadic_blocks(M):
    """Littlewood-Paley tiles [2^{k-1}, 2^k] for k >= 1 plus {0}, covering 0..M once."""
    blocks = [(0, 0)]
    lo, hi = 1, 2
    while lo <= M:
        blocks.append((lo, min(hi, M)))
        lo, hi = hi + 1, 2 * hi
    return blocks


def hilbert(coeffs):
    return FourierCoeffs(coeffs.M, -1j * np.sign(coeffs.indices) * coeffs.values)


def project_samples(samples, lo=None, hi=None):
    """Band projection applied directly on samples at their own resolution."""
    n = signed_frequencies(samples.N)
    keep = np.ones(samples.N, dtype=bool)
    if lo is not None:
        keep &= n >= lo
    if hi is not None:
        keep &= n <= hi
    return CircleSamples(np.fft.ifft(np.where(keep, np.fft.fft(samples.values), 0)))


def hilbert_samples(samples):
    """Conjugate function of real samples; the Nyquist bin is dropped so the output stays real."""
    n = signed_frequencies(samples.N)
    multiplier = -1j * np.sign(n)
    multiplier[samples.N // 2] = 0
    values = np.fft.ifft(np.fft.fft(samples.values) * multiplier)
    if samples.is_real:
        values = values.real
    return CircleSamples(values)


def smooth(samples, spec):
    multipliers = spec.multipliers(signed_frequencies(samples.N))
    values = np.fft.ifft(np.fft.fft(samples.values) * multipliers)
    if samples.is_real:
        values = values.real
    logger.debug("smoothed N=%d with %s cutoff %d", samples.N, spec.family, spec.cutoff)
    return CircleSamples(values)


def energy_outside(coeffs, fraction=0.9):
    """Sum of |n||a_n|^2 over |n| > fraction*M."""
    n = coeffs.indices
    tail = np.abs(n) > fraction * coeffs.M
    return float(np.sum(np.abs(n[tail]) * coeffs.power()[tail]))
