# degree/services/winding.py
import logging

import numpy as np

from degree.types import PhaseLift
from spectrum.exceptions import AliasingError, ResolutionError

logger = logging.getLogger(__name__)

# steps this close to pi are ambiguous between the two nearest branches
BRANCH_MARGIN = 1e-12


def phase_lift(samples):
    """Nearest-branch unwrapping of arg(samples) starting from the principal value at t = 0.

    Works for any nonvanishing samples, not only unimodular ones.
    """
    values = np.asarray(samples.values, dtype=np.complex128)
    if np.min(np.abs(values)) == 0:
        raise AliasingError("cannot lift the argument of a map that vanishes on the grid")
    steps = np.angle(np.roll(values, -1) / values)
    max_step = float(np.max(np.abs(steps)))
    if max_step >= np.pi - BRANCH_MARGIN:
        raise ResolutionError(max_step, values.size)
    lift = np.angle(values[0]) + np.concatenate(([0.0], np.cumsum(steps[:-1])))
    winding = int(np.rint(np.sum(steps) / (2 * np.pi)))
    return PhaseLift(lift, winding, max_step)


def degree_winding(samples):
    """Returns (degree, largest phase step between consecutive samples)."""
    lift = phase_lift(samples)
    logger.debug("winding %d at N=%d, max step %.3g", lift.winding, lift.N, lift.max_step)
    return lift.winding, lift.max_step
