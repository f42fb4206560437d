from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from spectrum.exceptions import CircleMapError

MAX_RADIUS = 1 - 1e-6


def check_zeros(zeros):
    zeros = tuple(complex(z) for z in zeros)
    for z in zeros:
        if not abs(z) < MAX_RADIUS:
            raise CircleMapError(f"zero {z} is not strictly inside the disk (|z| must stay below {MAX_RADIUS})")
    return zeros


@dataclass(frozen=True)
class BlaschkeStage:
    """One factor B_j(z^nu) of a dilated product."""

    zeros: Tuple[complex, ...]
    nu: int

    def __post_init__(self):
        object.__setattr__(self, 'zeros', check_zeros(self.zeros))
        if int(self.nu) < 1:
            raise CircleMapError(f"dilation must be a positive integer, got {self.nu}")
        object.__setattr__(self, 'nu', int(self.nu))

    @property
    def degree(self):
        return self.nu * len(self.zeros)


@dataclass(frozen=True)
class BlaschkeSpec:
    """prod_j B_j(z^{nu_j}) with each nu_j dividing nu_{j+1}."""

    stages: Tuple[BlaschkeStage, ...] = ()

    def __post_init__(self):
        stages = tuple(self.stages)
        for previous, current in zip(stages, stages[1:]):
            if current.nu % previous.nu:
                raise CircleMapError(f"dilation chain broken: {previous.nu} does not divide {current.nu}")
        object.__setattr__(self, 'stages', stages)

    @property
    def nu_chain(self):
        return [stage.nu for stage in self.stages]

    @property
    def zero_count(self):
        return sum(stage.degree for stage in self.stages)

    def boundary(self, t):
        """Boundary values at the angles t."""
        t = np.asarray(t, dtype=float)
        values = np.ones(t.shape, dtype=np.complex128)
        for stage in self.stages:
            z = np.exp(1j * stage.nu * t)
            for alpha in stage.zeros:
                values *= (alpha - z) / (1 - np.conj(alpha) * z)
        return values

    def as_dict(self):
        return {
            'stages': [
                {'zeros': [[z.real, z.imag] for z in stage.zeros], 'nu': stage.nu}
                for stage in self.stages
            ],
            'nu_chain': self.nu_chain,
        }


class MoebiusParams(BaseModel):
    """f(e^{it}) = e^{-ikt} (a - e^{ikt}) / (1 - a e^{ikt})."""

    model_config = ConfigDict(frozen=True)

    a: float = Field(gt=0, lt=1)
    k: int = Field(ge=1)


@dataclass
class GrowthTrace:
    """Outcome of the greedy weighted-norm construction; partial when a stage found no candidate."""

    family: Optional[str]
    growth: float
    requested: int
    initial_norm: float
    spec: BlaschkeSpec = field(default_factory=BlaschkeSpec)
    norms: List[float] = field(default_factory=list)
    bandwidths: List[int] = field(default_factory=list)
    diagnostic: str = ''

    @property
    def success(self):
        return len(self.norms) == self.requested

    @property
    def ratios(self):
        chain = [self.initial_norm] + self.norms
        return [b / a for a, b in zip(chain, chain[1:])]

    def as_dict(self):
        return {
            'weight': self.family,
            'growth': self.growth,
            'stages_requested': self.requested,
            'success': self.success,
            'initial_norm': self.initial_norm,
            'norm_trace': list(self.norms),
            'ratios': self.ratios,
            'bandwidths': list(self.bandwidths),
            'diagnostic': self.diagnostic,
            **self.spec.as_dict(),
        }


@dataclass
class SweepTable:
    """Rows (a, k, M, one_sided, two_sided) and the log-log fits run over them."""

    s: float
    conjugate: bool
    rows: List[dict]
    fits: List[dict] = field(default_factory=list)

    COLUMNS = ('a', 'k', 'M', 'one_sided', 'two_sided', 'one_sided_norm')

    def column(self, name):
        return np.array([row[name] for row in self.rows], dtype=float)
