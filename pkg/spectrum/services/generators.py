# spectrum/services/generators.py
"""Seeded test maps with known homotopy class, shared by the test suites and the suite runner."""
import numpy as np

from spectrum.types import CircleSamples, FourierCoeffs, UnimodularSamples


def make_rng(seed):
    return np.random.default_rng(seed)


def random_trig_phase(rng, N, degree=10, sup=2.0):
    """Real trigonometric polynomial of degree <= `degree` rescaled so its sup-norm lies in (0, sup]."""
    t = 2 * np.pi * np.arange(N) / N
    n = np.arange(1, degree + 1)
    a = rng.standard_normal(degree) / n
    b = rng.standard_normal(degree) / n
    phase = np.cos(np.outer(t, n)) @ a + np.sin(np.outer(t, n)) @ b
    phase -= phase.mean()
    target = sup * rng.uniform(0.2, 1.0)
    return CircleSamples(phase * target / np.max(np.abs(phase)))


def random_degree_map(rng, N, degree_range=(-5, 5), phase_degree=10, sup=2.0):
    """z^d e^{i phi} with d drawn from degree_range; returns (samples, d)."""
    d = int(rng.integers(degree_range[0], degree_range[1] + 1))
    phase = random_trig_phase(rng, N, phase_degree, sup)
    t = 2 * np.pi * np.arange(N) / N
    return UnimodularSamples.from_phase(d * t + phase.values), d


def random_smooth_modulus(rng, N, degree=6, amplitude=0.2):
    """Positive samples exp(u) with u a real trigonometric polynomial, max |u| = amplitude."""
    u = random_trig_phase(rng, N, degree, 1.0).values
    u = amplitude * u / np.max(np.abs(u))
    return CircleSamples(np.exp(u))


def random_coeffs(rng, M, decay=1.0):
    n = np.arange(-M, M + 1)
    scale = 1.0 / (1.0 + np.abs(n)) ** decay
    return FourierCoeffs(M, (rng.standard_normal(2 * M + 1) + 1j * rng.standard_normal(2 * M + 1)) * scale)


def two_arc_map(N, jump=np.pi / 2):
    """Degree-zero map whose phase jumps by `jump` at t = 0 and back at t = pi."""
    t = 2 * np.pi * np.arange(N) / N
    return UnimodularSamples.from_phase(np.where(t < np.pi, jump, 0.0))


def square_phase_map(N, height=1.0):
    """e^{i phi} with phi a smoothed square wave; continuous but with steep ramps."""
    t = 2 * np.pi * np.arange(N) / N
    return UnimodularSamples.from_phase(height * np.tanh(8 * np.sin(t)))
