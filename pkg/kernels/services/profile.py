# kernels/services/profile.py
import numpy as np


def gs_eval(spec, x):
    """g_s: blend on |x| < 1, (2 - |x|)^{2s} on 1 <= |x| <= 2, zero outside."""
    x = np.abs(np.asarray(x, dtype=float))
    c0, c2, c4 = spec.blend
    inner = c0 + c2 * x ** 2 + c4 * x ** 4
    outer = np.clip(2.0 - x, 0.0, None) ** (2 * spec.s)
    return np.where(x < 1, inner, np.where(x <= 2, outer, 0.0))


def gs_integral(spec):
    c0, c2, c4 = spec.blend
    return 2 * ((c0 + c2 / 3 + c4 / 5) + 1 / (2 * spec.s + 1))


def delta_ns(spec, n):
    """N^{2s} g_s(n/N - 2); equals n^{2s} on 0 <= n <= N and vanishes off (0, 4N)."""
    n = np.asarray(n, dtype=float)
    return spec.N ** (2 * spec.s) * gs_eval(spec, n / spec.N - 2)
