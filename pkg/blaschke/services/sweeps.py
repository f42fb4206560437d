# blaschke/services/sweeps.py
"""H^s sums of the Moebius counterexample family over (a, k) grids, with log-log slope fits.

Three laws are fitted, each only on grid points with 1 - a <= GAP_CUTOFF:
  gap       one-sided norm against (1 - a), slope 1/2 - s, for s < 1/2
  k         two-sided sum against k, slope 2s
  conjugate two-sided sum of the conjugate map against 1/(1 - a), slope 2s - 1, for s > 1/2
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import product

import numpy as np
from django.conf import settings
from pydantic import ValidationError

from blaschke.services.products import moebius_family, moebius_tail_bandwidth
from blaschke.types import MoebiusParams, SweepTable
from core.types import Check, CheckLedger
from spectrum.exceptions import PreconditionError

logger = logging.getLogger(__name__)

GAP_CUTOFF = 1 / 16
MIN_POINTS = 3
SLOPE_TOL = 0.05
RANGE_LIMIT = 2.0


def sweep_cell(params, s, conjugate):
    M = moebius_tail_bandwidth(params)
    coeffs = moebius_family(params, M)
    if conjugate:
        coeffs = coeffs.conjugate_map()
    n, power = coeffs.indices, coeffs.power()
    weights = np.abs(n).astype(float) ** (2 * s)
    one_sided = float(np.sum(np.where(n > 0, weights, 0.0) * power))
    return {
        'a': params.a,
        'k': params.k,
        'M': M,
        'one_sided': one_sided,
        'two_sided': float(np.sum(weights * power)),
        'one_sided_norm': float(np.sqrt(one_sided)),
    }


def fit_slope(x, y):
    """Least-squares slope of log y against log x, with the fit's residual sum of squares."""
    (slope, _), residuals, *_ = np.polyfit(np.log(x), np.log(y), 1, full=True)
    return float(slope), float(residuals[0]) if residuals.size else 0.0


def _fit_row(law, param, x, y, target):
    slope, residual = fit_slope(x, y)
    return {
        'law': law, 'param': param, 'slope': slope, 'target': target,
        'residual': residual, 'points': int(len(x)), 'tolerance': SLOPE_TOL,
    }


def fit_laws(table):
    rows = table.rows
    s = table.s
    fits = []
    for k in sorted({row['k'] for row in rows}):
        at_k = sorted((row for row in rows if row['k'] == k), key=lambda row: row['a'])
        near = [row for row in at_k if 1 - row['a'] <= GAP_CUTOFF]
        if len(near) < MIN_POINTS:
            continue
        gap = np.array([1 - row['a'] for row in near])
        if not table.conjugate and s < 0.5:
            norms = np.array([row['one_sided_norm'] for row in near])
            fits.append(_fit_row('gap', f'k={k}', gap, norms, 0.5 - s))
        if table.conjugate and s > 0.5:
            sums = np.array([row['two_sided'] for row in near])
            fit = _fit_row('conjugate', f'k={k}', 1 / gap, sums, 2 * s - 1)
            one_sided = np.array([row['one_sided'] for row in at_k])
            fit['range_ratio'] = float(one_sided.max() / one_sided.min()) if one_sided.min() > 0 else float('inf')
            fits.append(fit)

    for a in sorted({row['a'] for row in rows}):
        at_a = sorted((row for row in rows if row['a'] == a), key=lambda row: row['k'])
        if len(at_a) < MIN_POINTS:
            continue
        ks = np.array([row['k'] for row in at_a], dtype=float)
        sums = np.array([row['two_sided'] for row in at_a])
        fits.append(_fit_row('k', f'a={a:.17g}', ks, sums, 2 * s))
    return fits


def scaling_sweep(s, a_grid, k_grid, conjugate=False, workers=None):
    if not 0 < s < 1 or s == 0.5:
        raise PreconditionError(f"scaling sweeps need s in (0, 1) with s != 1/2, got s={s}")
    try:
        cells = [MoebiusParams(a=a, k=k) for a, k in product(a_grid, k_grid)]
    except ValidationError as exc:
        raise PreconditionError(f"bad sweep grid: {exc}") from exc
    if not cells:
        raise PreconditionError("scaling sweep grid is empty")

    workers = workers or settings.US_THREADS
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda p: sweep_cell(p, s, conjugate), cells))

    table = SweepTable(s, conjugate, rows)
    table.fits = fit_laws(table)
    if not table.fits:
        raise PreconditionError(
            f"degenerate sweep grid: no law has {MIN_POINTS} points "
            f"(gap laws use 1 - a <= {GAP_CUTOFF:g}, the k law needs {MIN_POINTS} values of k)"
        )
    for fit in table.fits:
        logger.info("sweep s=%g %s law at %s: slope %.4f (target %.4f)", s, fit['law'], fit['param'], fit['slope'], fit['target'])
    return table


def sweep_ledger(table):
    ledger = CheckLedger('sweep')
    ledger.record('s', table.s)
    ledger.record('conjugate', table.conjugate)
    ledger.record('rows', len(table.rows))
    ledger.record('fits', table.fits)
    for fit in table.fits:
        name = f"sweep.{fit['law']}-slope[{fit['param']}]"
        ledger.add(Check.bound(
            name, f"counterexample.{fit['law']}-law", abs(fit['slope'] - fit['target']), SLOPE_TOL,
            note=f"slope {fit['slope']:.4f} against {fit['target']:.4f}",
        ))
        if 'range_ratio' in fit:
            ledger.add(Check.bound(
                f"sweep.one-sided-bounded[{fit['param']}]", 'counterexample.conjugate-one-sided-bounded',
                fit['range_ratio'], RANGE_LIMIT,
            ))
    return ledger
