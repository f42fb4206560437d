import numpy as np


def weighted_norm_analytic(values, weights):
    """(sum_{n >= 0} omega_n |c_n|^2)^{1/2} for Taylor coefficients c_0, c_1, ..."""
    values = np.asarray(values)
    omega = weights.extended(values.size).omega
    return float(np.sqrt(np.sum(omega * np.abs(values) ** 2)))


def weighted_norm(coeffs, weights):
    """Weighted norm of the analytic part a_0, a_1, ..., a_M of the coefficients."""
    return weighted_norm_analytic(coeffs.values[coeffs.M:], weights)
