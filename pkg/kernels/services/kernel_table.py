# kernels/services/kernel_table.py
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from django.conf import settings

from kernels.services.profile import gs_eval
from kernels.types import KernelTable
from norms.services.quadrature import circle_distance
from spectrum.exceptions import PreconditionError

logger = logging.getLogger(__name__)

GRID_CHUNK = 512


def default_grid(size):
    """size points in (-pi, pi], including t = 0 for even sizes."""
    return -np.pi + 2 * np.pi * (np.arange(size) + 1) / size


def _kernel_chunk(spec, t):
    n = np.arange(1, 2 * spec.N + 1)
    g = gs_eval(spec, n / spec.N)
    return gs_eval(spec, 0.0) + 2 * np.cos(np.outer(t, n)) @ g


def kernel_values(spec, t, workers=None):
    """K_{N,s}(t) = sum_{|n| <= 2N} g_s(n/N) e^{int}, summed directly; real since g_s is even."""
    t = np.asarray(t, dtype=float)
    chunks = [t[i:i + GRID_CHUNK] for i in range(0, t.size, GRID_CHUNK)]
    workers = max(1, min(workers or settings.US_THREADS, len(chunks) or 1))
    if workers == 1:
        parts = [_kernel_chunk(spec, chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda chunk: _kernel_chunk(spec, chunk), chunks))
    return np.concatenate(parts) if parts else np.zeros(0)


def decay_envelope(spec, t):
    """N * min(1, (N ||t||)^{-1-2s})."""
    u = np.maximum(spec.N * circle_distance(t), 1.0)
    return spec.N * u ** (-1 - 2 * spec.s)


def kns_table(spec, grid=None, workers=None):
    grid = default_grid(16 * spec.N) if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid <= -np.pi) or np.any(grid > np.pi):
        raise PreconditionError("kernel grid must lie in (-pi, pi]")
    values = kernel_values(spec, grid, workers)
    envelope = decay_envelope(spec, grid)
    fitted_c = float(np.max(np.abs(values) / envelope))
    logger.info("K_{N,s} table at N=%d, s=%g over %d points: fitted c = %.4f", spec.N, spec.s, grid.size, fitted_c)
    return KernelTable(spec, grid, values, envelope, fitted_c)
