from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from spectrum.exceptions import CircleMapError

WEIGHT_FAMILIES = {
    'log': lambda n: np.log(n + 2.0),
    'constant': lambda n: np.ones_like(n, dtype=float),
    'sqrt': lambda n: np.sqrt(n + 1.0),
    'linear': lambda n: n + 1.0,
}


class SobolevParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: float = Field(gt=0, allow_inf_nan=False)
    side: Literal['one', 'two'] = 'two'
    n_cut: Optional[int] = Field(default=None, ge=1)


@dataclass(frozen=True)
class WeightSeq:
    """Nonnegative weights omega_n for n = 0..len-1."""

    omega: np.ndarray
    family: Optional[str] = None

    def __post_init__(self):
        omega = np.array(self.omega, dtype=float)
        if omega.ndim != 1 or omega.size < 2:
            raise CircleMapError("a weight sequence needs at least two entries")
        if np.any(omega < 0) or not np.all(np.isfinite(omega)):
            raise CircleMapError("weights must be finite and nonnegative")
        omega.setflags(write=False)
        object.__setattr__(self, 'omega', omega)

    @classmethod
    def named(cls, family, length):
        if family not in WEIGHT_FAMILIES:
            raise CircleMapError(f"unknown weight family {family!r}; choose from {sorted(WEIGHT_FAMILIES)}")
        return cls(WEIGHT_FAMILIES[family](np.arange(length, dtype=float)), family)

    def __len__(self):
        return self.omega.size

    @property
    def tends_to_infinity(self):
        # only testable on the prefix we hold
        return bool(self.omega[-1] > self.omega[0])

    def is_nondecreasing(self):
        return bool(np.all(np.diff(self.omega) >= 0))

    def extended(self, length):
        """Same family at a longer prefix; arbitrary sequences cannot be extended."""
        if length <= len(self):
            return WeightSeq(self.omega[:length], self.family)
        if self.family is None:
            raise CircleMapError(f"weight prefix of length {len(self)} is too short for {length} coefficients")
        return WeightSeq.named(self.family, length)


@dataclass(frozen=True)
class OscillationProfile:
    """Per-scale maxima of windowed mean oscillation.

    modulus_gap[m] is the largest 1 - |window mean| at scale m; slack[m] is the
    smallest windowwise (mean oscillation - (1 - |window mean|)), nonnegative for
    unimodular input.
    """

    scales: np.ndarray
    osc: np.ndarray
    modulus_gap: np.ndarray
    slack: np.ndarray

    def __post_init__(self):
        if not (len(self.scales) == len(self.osc) == len(self.modulus_gap) == len(self.slack)):
            raise CircleMapError("profile arrays must share the scale count")
        if np.any(np.asarray(self.osc) < 0):
            raise CircleMapError("mean oscillation cannot be negative")

    @property
    def tail(self):
        return float(self.osc[-1])

    def as_rows(self):
        return [
            {'scale': float(w), 'osc': float(o), 'modulus_gap': float(g), 'slack': float(s)}
            for w, o, g, s in zip(self.scales, self.osc, self.modulus_gap, self.slack)
        ]
