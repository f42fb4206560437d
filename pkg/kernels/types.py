from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

POSITIVITY_GRID = 10_000


class KernelSpec(BaseModel):
    """Scale N and exponent s of the profile g_s and the kernels built from it.

    On |x| < 1 the profile is the even quartic c0 + c2 x^2 + c4 x^4 matching value,
    slope and curvature of (2 - |x|)^{2s} at |x| = 1.
    """

    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=1)
    s: float = Field(gt=0, lt=1)

    @property
    def blend(self):
        s = self.s
        return (1 + s + s * s / 2, -(s + s * s), s * s / 2)

    @model_validator(mode='after')
    def check_blend_positive(self):
        c0, c2, c4 = self.blend
        x = np.linspace(0.0, 1.0, POSITIVITY_GRID)
        if np.min(c0 + c2 * x ** 2 + c4 * x ** 4) <= 0:
            raise ValueError(f"blend polynomial is not positive on [0, 1] for s={self.s}")
        return self


@dataclass(frozen=True)
class WeightSums:
    """I_N (symmetric) and J_N (antisymmetric) weighted coefficient sums."""

    symmetric: float
    antisymmetric: float
    N: int
    s: float

    def __post_init__(self):
        if not (np.isfinite(self.symmetric) and np.isfinite(self.antisymmetric)):
            raise ValueError("weight sums must be finite")

    def as_dict(self):
        return {'I': self.symmetric, 'J': self.antisymmetric, 'N': self.N, 's': self.s}


@dataclass(frozen=True)
class KernelTable:
    spec: KernelSpec
    t: np.ndarray
    values: np.ndarray
    envelope: np.ndarray
    fitted_c: float

    @property
    def ratio(self):
        return np.abs(self.values) / self.envelope

    def rows(self):
        majorant = self.fitted_c * self.envelope
        return zip(self.t, self.values, majorant, self.ratio)
