"""
Strain induced pseudo-gauge fields and the general local coupling of the
effective envelope equations.

For a strain grid U and Dirac point data (nu_F, mu, xi, xi#), with
T_j = Tr(U sigma_j) and real mu,

    A1 = -(mu / nu_F) T3,    A2 = (mu / nu_F) T1,    B = d1 A2 - d2 A1,
    W0 = xi T0 + xi# T2.

Schroedinger flavour: v = nu_F, W = W0.  Wave flavour: the envelope
equation carries 2 sqrt(E_D) on the time derivative, so v = nu_F / (2 sqrt(E_D))
and W = -W0 / (2 sqrt(E_D)).

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

import numpy as np

from hexdirac.strain.deformation import Deformation, jacobian_U
from hexdirac.utils.errors import ComplexMu, NumericalFailure
from hexdirac.utils.math import SIGMA1, SIGMA2, trace_components

FLAVORS = ('schroedinger', 'wave')

MU_TOL = 1e-8


class GaugeFieldData:
    """Gauge potential, scalar potential and velocity on a grid."""

    def __init__(self, grid, A1, A2, W, v, flavor, B=None, B_exact=None):
        self.grid = grid
        self.A1 = A1
        self.A2 = A2
        self.W = W
        self.v = float(v)
        self.flavor = flavor
        self.B = B
        self.B_exact = B_exact

    @property
    def B_error(self):
        if self.B is None or self.B_exact is None:
            return float('nan')
        return float(np.max(np.abs(self.B - self.B_exact)))


def flavor_factor(dpd, flavor):
    """Coefficient c of i d_T beta = c H_S beta."""
    if flavor == 'schroedinger':
        return 1.0
    if flavor == 'wave':
        if not dpd.E_D > 0:
            raise NumericalFailure("Wave flavour needs E_D > 0, got {}".format(dpd.E_D))
        return -1.0 / (2.0 * np.sqrt(dpd.E_D))
    raise ValueError("Unknown flavour '{}', expected one of {}".format(flavor, FLAVORS))


def _scalar_potential(dpd, T0, T2):
    W0 = dpd.xi * T0 + dpd.xiSharp * T2
    if np.max(np.abs(np.imag(W0))) > 1e-8 * max(1.0, np.max(np.abs(W0))):
        raise NumericalFailure("xi T0 + xi# T2 is not real")
    return np.real(W0)


def pseudo_fields(strain, dpd, flavor='schroedinger'):
    """
    Simplified gauge form of the strain coupling.

    :param strain:      StrainGrid
    :param dpd:         DiracPointData with real mu
    :param flavor:      'schroedinger' or 'wave'
    :return:            GaugeFieldData with numerical and (catalogue kinds) exact B
    """
    if abs(dpd.mu.imag) > MU_TOL * max(1.0, abs(dpd.mu)):
        raise ComplexMu("mu = {} is not real, use general_coupling".format(dpd.mu))
    c = flavor_factor(dpd, flavor)
    ratio = dpd.mu.real / dpd.nuF
    T0, T1, T2, T3 = trace_components(strain.U)
    A1 = -ratio * np.real(T3)
    A2 = ratio * np.real(T1)
    W = c * _scalar_potential(dpd, T0, T2)

    gauge = GaugeFieldData(strain.grid, A1, A2, W, abs(c) * dpd.nuF, flavor)
    gauge.B = magnetic_field(gauge)
    if strain.dU is not None:
        dU = strain.dU
        # d1 T1 + d2 T3 with d_k T1 = d_k (U12 + U21), d_k T3 = d_k (U11 - U22)
        gauge.B_exact = ratio * (dU[0, 1, 0] + dU[1, 0, 0] + dU[0, 0, 1] - dU[1, 1, 1])
    logging.debug("Pseudo fields ({}): max|A| = {:.3e}, max|B| = {:.3e}".format(
        flavor, max(np.max(np.abs(A1)), np.max(np.abs(A2))), np.max(np.abs(gauge.B))))
    return gauge


def magnetic_field(gauge, method='spectral'):
    """B = d1 A2 - d2 A1 by spectral or fourth order differences."""
    g = gauge.grid
    if method == 'spectral':
        return np.real(g.derivative(gauge.A2, 0) - g.derivative(gauge.A1, 1))
    if method == 'fd4':
        return g.fd4_derivative(gauge.A2, 0) - g.fd4_derivative(gauge.A1, 1)
    raise ValueError("Unknown differentiation method '{}'".format(method))


def general_coupling(strain, dpd, flavor='schroedinger'):
    """
    Envelope equation in the standard form v (p . sigma) + M for any complex mu.

    The envelope solves i d_T beta = c H_S beta with
    H_S = nu_F (p1 sigma1 - p2 sigma2) + P_S and
    P_S = [[W0, mu (T3 - i T1)], [conj(mu) (T3 + i T1), W0]].
    Conjugating by F = sigma1 (c > 0) or sigma2 (c < 0) maps the kinetic part
    onto |c| nu_F (p . sigma); the state in the standard frame is F beta.

    :return:    (v, M, F) with M of shape (2, 2, N1, N2)
    """
    c = flavor_factor(dpd, flavor)
    T0, T1, T2, T3 = trace_components(strain.U)
    W0 = _scalar_potential(dpd, T0, T2)
    P = np.empty((2, 2) + strain.grid.shape, dtype=complex)
    P[0, 0] = W0
    P[1, 1] = W0
    P[0, 1] = dpd.mu * (T3 - 1j * T1)
    P[1, 0] = np.conj(dpd.mu) * (T3 + 1j * T1)
    F = SIGMA1 if c > 0 else SIGMA2
    M = c * np.einsum('ab,bc...,cd->ad...', F, P, F)
    return abs(c) * dpd.nuF, M, F


def linear_gauge_deformation(dpd, B0, r_c, w_c):
    """Windowed deformation producing a constant pseudo-magnetic field B0 near Y1 = 0."""
    if not dpd.mu_is_real or dpd.mu.real == 0:
        raise ComplexMu("Linear gauge deformation needs a real non-zero mu, got {}".format(dpd.mu))
    return Deformation.linear_gauge(B0 * dpd.nuF / (2.0 * dpd.mu.real), r_c, w_c)


def erf_gauge_deformation(dpd, grid=None):
    """
    Deformation with A2 = erf(Y1): U21 = (nu_F / mu) erf(Y1), periodised on the
    grid's Y1 period when there is one.
    """
    if not dpd.mu_is_real or dpd.mu.real == 0:
        raise ComplexMu("erf gauge deformation needs a real non-zero mu, got {}".format(dpd.mu))
    period = grid.y1_period if grid is not None else None
    return Deformation.erf_gauge(dpd.nuF / dpd.mu.real, period)


def strain_fields(deformation, grid, dpd, flavor='schroedinger'):
    """Gauge fields of a deformation sampled on a grid."""
    return pseudo_fields(jacobian_U(deformation, grid), dpd, flavor)
