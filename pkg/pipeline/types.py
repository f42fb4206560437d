import math
from dataclasses import dataclass
from typing import List, Literal

import numpy as np
from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field, field_validator

from degree.types import PhaseLift
from spectrum.exceptions import CircleMapError
from spectrum.types import CircleSamples, UnimodularSamples


class PipelineConfig(BaseModel):
    """Knobs of the smoothing / outer-factor chains.

    fitted_B and fitted_c0 stand in for absolute constants that have no known
    value; the absorption margin computed with them is reported, not gated.
    """

    model_config = ConfigDict(frozen=True)

    eps_schedule: List[float] = Field(default_factory=lambda: list(settings.PIPELINE_EPS_SCHEDULE))
    delta0: float = Field(default_factory=lambda: settings.PIPELINE_DELTA0, gt=0, le=math.pi / 4)
    rho_floor: float = Field(default_factory=lambda: settings.PIPELINE_RHO_FLOOR, gt=0, le=0.5)
    rho_gate: float = Field(default_factory=lambda: settings.PIPELINE_RHO_GATE, gt=0, lt=1)
    family: Literal['fejer', 'vallee-poussin'] = 'vallee-poussin'
    identity_tol: float = Field(default=1e-8, gt=0)
    bound_slack: float = Field(default=0.01, ge=0)
    uniformity_tol: float = Field(default=0.05, gt=0)
    unimodular_tol: float = Field(default_factory=lambda: settings.UNIMODULAR_TOL, gt=0)
    fitted_B: float = Field(default=1.0, gt=0)
    fitted_c0: float = Field(default=1.0, gt=0)

    @field_validator('eps_schedule')
    @classmethod
    def check_schedule(cls, value):
        if not value:
            raise ValueError("epsilon schedule must not be empty")
        if any(not 0 < eps <= 1 for eps in value):
            raise ValueError("every epsilon must lie in (0, 1]")
        if any(b >= a for a, b in zip(value, value[1:])):
            raise ValueError("epsilon schedule must be strictly decreasing")
        return value

    @property
    def absorption_factor(self):
        return self.fitted_B * (self.fitted_c0 + 1)


@dataclass(frozen=True)
class PolarParts:
    """h = rho * e^{i phi} with rho > 0 and phi a continuous lift."""

    rho: CircleSamples
    phi: PhaseLift

    def __post_init__(self):
        if not self.rho.is_real:
            raise CircleMapError("modulus samples must be real")
        if self.rho.N != self.phi.N:
            raise CircleMapError(f"modulus has {self.rho.N} samples, phase has {self.phi.N}")
        if np.min(self.rho.values) <= 0:
            raise CircleMapError("modulus must be positive")

    @property
    def N(self):
        return self.rho.N

    @property
    def gap(self):
        """||1 - rho||_inf."""
        return float(np.max(np.abs(1.0 - self.rho.values)))

    @property
    def inverse_sup(self):
        return float(1.0 / np.min(self.rho.values))

    def reconstruct(self):
        return CircleSamples(self.rho.values * self.phi.exp())


@dataclass(frozen=True)
class Stage:
    """Everything built from f at one epsilon: h = smooth(f), its polar parts, R and H = h R."""

    epsilon: float
    cutoff: int
    h: CircleSamples
    polar: PolarParts
    outer: CircleSamples
    H: UnimodularSamples

    def passes_gate(self, rho_gate):
        return self.polar.gap < rho_gate

    def summary(self, rho_gate):
        return {
            'epsilon': self.epsilon,
            'cutoff': self.cutoff,
            'rho_gap': self.polar.gap,
            'min_rho': float(np.min(self.polar.rho.values)),
            'gated': self.passes_gate(rho_gate),
        }


@dataclass(frozen=True)
class ArgumentReduction:
    """g = f e^{-i psi}; iterating yields (g, multiplier) so callers can unpack it."""

    g: UnimodularSamples
    multiplier: UnimodularSamples
    psi: CircleSamples
    cutoff: int
    residual: float

    def __iter__(self):
        yield self.g
        yield self.multiplier
