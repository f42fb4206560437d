import math
from dataclasses import dataclass
from typing import Literal, Mapping, Optional

import numpy as np
from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field

from .exceptions import CircleMapError


def is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


def _frozen(array):
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class CircleSamples:
    """Uniform samples values[j] = F(e^{2 pi i j / N}) of a function on the circle.

    Real input stays real (phases, log-moduli); anything else is stored as complex128.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values)
        if values.ndim != 1:
            raise CircleMapError(f"samples must be one-dimensional, got shape {values.shape}")
        if values.size < 4 or not is_power_of_two(values.size):
            raise CircleMapError(f"sample count must be a power of two >= 4, got {values.size}")
        if not np.all(np.isfinite(values)):
            raise CircleMapError("samples contain non-finite entries")
        dtype = np.complex128 if np.iscomplexobj(values) else np.float64
        object.__setattr__(self, 'values', _frozen(values.astype(dtype)))

    @property
    def N(self):
        return self.values.size

    @property
    def grid(self):
        return 2 * np.pi * np.arange(self.N) / self.N

    @property
    def is_real(self):
        return not np.iscomplexobj(self.values)

    @classmethod
    def from_function(cls, fn, N):
        t = 2 * np.pi * np.arange(N) / N
        return cls(np.asarray(fn(t)))

    def sup_norm(self):
        return float(np.max(np.abs(self.values)))

    def l2_norm(self):
        # normalized measure dt / 2 pi
        return float(np.sqrt(np.mean(np.abs(self.values) ** 2)))

    def energy(self):
        return float(np.mean(np.abs(self.values) ** 2))

    def sup_distance(self, other):
        return float(np.max(np.abs(self.values - _values_of(other))))

    def l2_distance(self, other):
        return float(np.sqrt(np.mean(np.abs(self.values - _values_of(other)) ** 2)))

    def __mul__(self, other):
        return CircleSamples(self.values * _values_of(other))


def _values_of(samples):
    return samples.values if hasattr(samples, 'values') else np.asarray(samples)


@dataclass(frozen=True)
class UnimodularSamples:
    """Circle samples with | |values[j]| - 1 | <= tol at every sample."""

    base: CircleSamples
    tol: Optional[float] = None

    def __post_init__(self):
        tol = settings.UNIMODULAR_TOL if self.tol is None else float(self.tol)
        object.__setattr__(self, 'tol', tol)
        deviation = float(np.max(np.abs(np.abs(self.base.values) - 1.0)))
        if deviation > tol:
            raise CircleMapError(
                f"samples are not unimodular: max ||f| - 1| = {deviation:.3e} exceeds tol {tol:.1e}"
            )

    @property
    def values(self):
        return self.base.values

    @property
    def N(self):
        return self.base.N

    @property
    def grid(self):
        return self.base.grid

    @classmethod
    def from_function(cls, fn, N, tol=None):
        return cls(CircleSamples.from_function(fn, N), tol)

    @classmethod
    def from_phase(cls, phase, tol=None):
        phase = phase.values if hasattr(phase, 'values') else np.asarray(phase)
        return cls(CircleSamples(np.exp(1j * np.asarray(phase, dtype=float))), tol)

    @classmethod
    def normalized(cls, samples, tol=None):
        """Project nonvanishing samples onto the circle."""
        values = samples.values if hasattr(samples, 'values') else np.asarray(samples)
        return cls(CircleSamples(values / np.abs(values)), tol)

    def __mul__(self, other):
        return UnimodularSamples(CircleSamples(self.values * _values_of(other)), self.tol)

    def conjugate(self):
        return UnimodularSamples(CircleSamples(np.conj(self.values)), self.tol)

    def sup_distance(self, other):
        return self.base.sup_distance(other)

    def l2_distance(self, other):
        return self.base.l2_distance(other)


@dataclass(frozen=True)
class FourierCoeffs:
    """Coefficients a_n for n in [-M, M]; values[n + M] holds a_n."""

    M: int
    values: np.ndarray

    def __post_init__(self):
        M = int(self.M)
        if M < 0:
            raise CircleMapError(f"bandwidth must be nonnegative, got {M}")
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (2 * M + 1,):
            raise CircleMapError(f"expected {2 * M + 1} coefficients for M={M}, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise CircleMapError("coefficients contain non-finite entries")
        object.__setattr__(self, 'M', M)
        object.__setattr__(self, 'values', _frozen(values.copy()))

    @property
    def indices(self):
        return np.arange(-self.M, self.M + 1)

    def __getitem__(self, n):
        if -self.M <= n <= self.M:
            return complex(self.values[n + self.M])
        return 0j

    def power(self):
        return np.abs(self.values) ** 2

    def energy(self):
        return float(np.sum(self.power()))

    @classmethod
    def zeros(cls, M):
        return cls(M, np.zeros(2 * M + 1, dtype=np.complex128))

    @classmethod
    def delta(cls, n, M, value=1.0):
        values = np.zeros(2 * M + 1, dtype=np.complex128)
        values[n + M] = value
        return cls(M, values)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, complex], M=None):
        """Build from {n: a_n}; absent indices are zero."""
        if M is None:
            M = max((abs(int(n)) for n in mapping), default=0)
        values = np.zeros(2 * M + 1, dtype=np.complex128)
        for n, a in mapping.items():
            n = int(n)
            if abs(n) > M:
                raise CircleMapError(f"index {n} outside bandwidth M={M}")
            values[n + M] = a
        return cls(M, values)

    def with_bandwidth(self, M):
        """Zero-pad or truncate to bandwidth M."""
        values = np.zeros(2 * M + 1, dtype=np.complex128)
        keep = min(M, self.M)
        values[M - keep:M + keep + 1] = self.values[self.M - keep:self.M + keep + 1]
        return FourierCoeffs(M, values)

    def reflected(self):
        """Coefficients of F(e^{-it}): n -> a_{-n}."""
        return FourierCoeffs(self.M, self.values[::-1])

    def conjugate_map(self):
        """Coefficients of the complex conjugate of F: n -> conj(a_{-n})."""
        return FourierCoeffs(self.M, np.conj(self.values[::-1]))

    def __add__(self, other):
        M = max(self.M, other.M)
        return FourierCoeffs(M, self.with_bandwidth(M).values + other.with_bandwidth(M).values)

    def __sub__(self, other):
        M = max(self.M, other.M)
        return FourierCoeffs(M, self.with_bandwidth(M).values - other.with_bandwidth(M).values)

    def __mul__(self, scalar):
        return FourierCoeffs(self.M, self.values * scalar)

    __rmul__ = __mul__

    def max_abs_difference(self, other):
        return float(np.max(np.abs((self - other).values)))


class SmootherSpec(BaseModel):
    """Summability kernel K_eps given by its Fourier multipliers.

    The cutoff order is ceil(1/epsilon). Multipliers are real, lie in [0, 1] and equal
    1 at n = 0, so the kernel has mean exactly 1.
    """

    model_config = ConfigDict(frozen=True)

    family: Literal['fejer', 'vallee-poussin'] = 'vallee-poussin'
    epsilon: float = Field(gt=0, le=1)

    @property
    def cutoff(self):
        return max(1, math.ceil(1.0 / self.epsilon - 1e-9))

    def multipliers(self, n):
        n = np.abs(np.asarray(n, dtype=float))
        L = self.cutoff
        if self.family == 'fejer':
            return np.clip(1.0 - n / (L + 1), 0.0, 1.0)
        # de la Vallee-Poussin: flat on [0, L], linear down to 0 at 2L
        return np.clip(2.0 - n / L, 0.0, 1.0)
