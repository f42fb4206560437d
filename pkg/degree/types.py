from dataclasses import dataclass
from typing import Optional

import numpy as np

from spectrum.exceptions import CircleMapError
from spectrum.types import CircleSamples


@dataclass(frozen=True)
class PhaseLift:
    """Continuous argument of a nonvanishing sampled map.

    values[j+1] - values[j] stays below pi in absolute value; the closing step from
    the last sample back to the first differs from that bound by 2 pi * winding.
    """

    values: np.ndarray
    winding: int
    max_step: float

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        steps = np.diff(np.append(values, values[0] + 2 * np.pi * self.winding))
        if np.max(np.abs(steps)) >= np.pi:
            raise CircleMapError("phase lift has a step of pi or more")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'winding', int(self.winding))

    @property
    def N(self):
        return self.values.size

    def periodic_part(self):
        """values - winding * t, a genuine function on the circle."""
        t = 2 * np.pi * np.arange(self.N) / self.N
        return CircleSamples(self.values - self.winding * t)

    def exp(self):
        return np.exp(1j * self.values)


@dataclass(frozen=True)
class DegreeResult:
    spectral_sum: float
    rounded: int
    residual: float
    winding: Optional[int] = None
    tail_energy: float = 0.0

    @property
    def agrees(self):
        return self.winding is None or self.winding == self.rounded

    def as_dict(self):
        return {
            'spectral_sum': self.spectral_sum,
            'rounded': self.rounded,
            'winding': self.winding,
            'residual': self.residual,
            'tail_energy': self.tail_energy,
        }


@dataclass(frozen=True)
class EnergyIdentity:
    """Two sides of sum |n||a_n|^2 = 2 sum_{n>0} n|a_n|^2 for a degree-zero map."""

    two_sided: float
    doubled_positive: float
    tolerance: float

    @property
    def difference(self):
        return abs(self.two_sided - self.doubled_positive)

    @property
    def passed(self):
        return self.difference <= self.tolerance * max(1.0, abs(self.two_sided))
