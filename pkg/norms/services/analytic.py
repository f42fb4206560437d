# norms/services/analytic.py
"""Analytic-part bound for e^{i phi} with phi small in H^{s'}."""
import logging

import numpy as np

from core.types import Check, CheckLedger
from norms.services.sobolev import sobolev_norm
from spectrum.exceptions import PreconditionError
from spectrum.services.transforms import analyze, project
from spectrum.types import CircleSamples

logger = logging.getLogger(__name__)

ANCHOR = 'analytic-part'


def analytic_part_bound(phi, s_prime, delta=0.1):
    """Checks ||f|| <= 3 ||Pf|| for f = e^{i phi}, with ||.|| the H^{s'} seminorm of n != 0.

    Preconditions: phi real, ||phi|| < delta <= 1/10. The intermediate chain goes
    through h = f - 1 - i phi, whose norm must stay below delta ||phi||.
    """
    if not phi.is_real:
        raise PreconditionError("the phase must be real-valued")
    if not 0 < delta <= 0.1:
        raise PreconditionError(f"delta must lie in (0, 1/10], got {delta}")
    M = phi.N // 2 - 1
    phi_coeffs = analyze(phi, M)
    phi_norm = sobolev_norm(phi_coeffs, s_prime)
    if phi_norm >= delta:
        raise PreconditionError(
            f"||phi||_H^{s_prime} = {phi_norm:.4g} is not below delta = {delta}; the bound is only claimed for small phases"
        )
    f_coeffs = analyze(CircleSamples(np.exp(1j * phi.values)), M)
    h_values = np.exp(1j * phi.values) - 1 - 1j * phi.values
    h_coeffs = analyze(CircleSamples(h_values), M)

    f_norm = sobolev_norm(f_coeffs, s_prime)
    pf_norm = sobolev_norm(project(f_coeffs, 1), s_prime)
    h_norm = sobolev_norm(h_coeffs, s_prime)
    p_phi_norm = sobolev_norm(project(phi_coeffs, 1), s_prime)

    ledger = CheckLedger('analytic-part-bound')
    ledger.record('s_prime', float(s_prime))
    ledger.record('delta', float(delta))
    ledger.record('phi_norm', phi_norm)
    ledger.record('f_norm', f_norm)
    ledger.record('analytic_part_norm', pf_norm)
    ledger.record('h_norm', h_norm)
    ledger.record('ratio', f_norm / pf_norm if pf_norm > 0 else 0.0)

    ledger.add(Check.bound('analytic.h-small', f'{ANCHOR}.remainder', h_norm, delta * phi_norm, 1e-14))
    ledger.add(Check.bound(
        'analytic.h-series', f'{ANCHOR}.series-majorant', h_norm,
        phi_norm ** 2 / 2 + phi_norm ** 3 / 6, 1e-14, gated=False,
        note='majorant assumes a unit algebra constant for the seminorm',
    ))
    ledger.add(Check.residual(
        'analytic.half-energy', f'{ANCHOR}.real-phase-symmetry',
        abs(p_phi_norm ** 2 - phi_norm ** 2 / 2), 1e-12 * max(1.0, phi_norm ** 2),
    ))
    ledger.add(Check.bound(
        'analytic.lower', f'{ANCHOR}.analytic-part-lower',
        (1 / np.sqrt(2) - delta) * phi_norm, pf_norm, 1e-14,
    ))
    ledger.add(Check.bound('analytic.upper', f'{ANCHOR}.full-upper', f_norm, (1 + delta) * phi_norm, 1e-14))
    ledger.add(Check.bound('analytic.ratio', f'{ANCHOR}.final', f_norm, 3 * pf_norm, 1e-14))
    logger.info(
        "analytic-part bound at s'=%g: ||f|| = %.4g, ||Pf|| = %.4g, ratio %.3f",
        s_prime, f_norm, pf_norm, ledger.values['ratio'],
    )
    return ledger


def random_small_phase(rng, N, s_prime, target_norm, degree=4):
    """Real trigonometric polynomial of degree <= `degree` scaled to ||phi||_H^{s'} = target_norm."""
    t = 2 * np.pi * np.arange(N) / N
    n = np.arange(1, degree + 1)
    phase = np.cos(np.outer(t, n)) @ rng.standard_normal(degree) + np.sin(np.outer(t, n)) @ rng.standard_normal(degree)
    norm = sobolev_norm(analyze(CircleSamples(phase), N // 2 - 1), s_prime)
    return CircleSamples(phase * target_norm / norm)
