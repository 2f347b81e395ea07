"""
Mathematical helper functions shared by the numerical modules.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import numpy as np

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


class PauliBasis:
    """The four constant Pauli matrices and the operations built on them."""

    sigma0 = SIGMA0
    sigma1 = SIGMA1
    sigma2 = SIGMA2
    sigma3 = SIGMA3

    @staticmethod
    def all():
        return SIGMA0, SIGMA1, SIGMA2, SIGMA3

    @staticmethod
    def contract(m, n):
        """Non-conjugated double contraction sum_ij m_ij n_ij."""
        return np.sum(np.asarray(m) * np.asarray(n))

    @staticmethod
    def decompose(m):
        """
        Coefficients (h0, h1, h2, h3) with m = sum_j h_j sigma_j.

        Works on a single 2x2 matrix or on a field of shape (2, 2, ...).
        """
        m = np.asarray(m)
        h0 = 0.5 * (m[0, 0] + m[1, 1])
        h3 = 0.5 * (m[0, 0] - m[1, 1])
        h1 = 0.5 * (m[0, 1] + m[1, 0])
        h2 = 0.5j * (m[0, 1] - m[1, 0])
        return h0, h1, h2, h3


def trace_components(u):
    """
    Traces T_j = Tr(U sigma_j) of a strain field.

    :param u:   array of shape (2, 2, ...) with u[i, j] = d_j u_i
    :return:    tuple (T0, T1, T2, T3)
    """
    t0 = u[0, 0] + u[1, 1]
    t1 = u[0, 1] + u[1, 0]
    t2 = 1j * (u[0, 1] - u[1, 0])
    t3 = u[0, 0] - u[1, 1]
    return t0, t1, t2, t3


def hermitian_exp(h0, h1, h2, h3, t):
    """
    exp(-i t H) for H = h0 + h.sigma with real h, evaluated pointwise.

    :return:    array of shape (2, 2, ...)
    """
    norm = np.sqrt(h1 ** 2 + h2 ** 2 + h3 ** 2)
    c = np.cos(norm * t)
    with np.errstate(invalid='ignore', divide='ignore'):
        s = np.where(norm > 0, np.sin(norm * t) / np.where(norm > 0, norm, 1.0), t)
    phase = np.exp(-1j * h0 * t)
    out = np.empty((2, 2) + np.shape(norm), dtype=complex)
    out[0, 0] = phase * (c - 1j * s * h3)
    out[1, 1] = phase * (c + 1j * s * h3)
    out[0, 1] = phase * (-1j * s * (h1 - 1j * h2))
    out[1, 0] = phase * (-1j * s * (h1 + 1j * h2))
    return out


def smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.asarray(x, dtype=float)

    def _psi(z):
        out = np.zeros_like(z)
        pos = z > 0
        out[pos] = np.exp(-1.0 / z[pos])
        return out

    a = _psi(x)
    b = _psi(1.0 - x)
    return a / (a + b)


def smooth_step_derivative(x):
    """Derivative of :func:`smooth_step`."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = (x > 0) & (x < 1)
    z = x[inside]
    a = np.exp(-1.0 / z)
    b = np.exp(-1.0 / (1.0 - z))
    da = a / z ** 2
    db = -b / (1.0 - z) ** 2
    out[inside] = (da * (a + b) - a * (da + db)) / (a + b) ** 2
    return out


def window(y, r_c, w_c):
    """Bump equal to 1 on |y| <= r_c and 0 on |y| >= r_c + w_c."""
    return smooth_step((r_c + w_c - np.abs(y)) / w_c)


def window_derivative(y, r_c, w_c):
    y = np.asarray(y, dtype=float)
    return -np.sign(y) * smooth_step_derivative((r_c + w_c - np.abs(y)) / w_c) / w_c
