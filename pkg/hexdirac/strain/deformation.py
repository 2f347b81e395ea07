"""
Slowly varying deformations u(Y) and their Jacobians U_ij = d_j u_i.

Catalogue:
    constant        u = 0
    linear-gauge    u = (0, beta int_0^Y1 2 s chi(s) ds), U21 = 2 beta Y1 chi(Y1)
    erf-gauge       U21 = a erf(Y1), periodised on a strip of width P as
                    a [erf(Y1) - erf(Y1 - P/2) - erf(Y1 + P/2)]
    gridded         displacement samples, differentiated with fourth order
                    central differences

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import numpy as np
from scipy import integrate, special

from hexdirac.utils.math import window, window_derivative

KINDS = ('constant', 'linear-gauge', 'erf-gauge', 'gridded')


def _erf_antiderivative(x):
    return x * special.erf(x) + np.exp(-x ** 2) / np.sqrt(np.pi)


def erf_profile(y, period=None):
    """
    Periodised erf profile and its antiderivative vanishing at 0.

    :param y:       coordinates
    :param period:  strip width P, None for the plain erf
    :return:        (profile, derivative, antiderivative)
    """
    y = np.asarray(y, dtype=float)
    gauss = 2.0 / np.sqrt(np.pi)
    if period is None:
        return (special.erf(y), gauss * np.exp(-y ** 2),
                _erf_antiderivative(y) - _erf_antiderivative(0.0))
    h = 0.5 * period
    prof = special.erf(y) - special.erf(y - h) - special.erf(y + h)
    deriv = gauss * (np.exp(-y ** 2) - np.exp(-(y - h) ** 2) - np.exp(-(y + h) ** 2))
    anti = (_erf_antiderivative(y) - _erf_antiderivative(0.0) - _erf_antiderivative(y - h) -
            _erf_antiderivative(y + h) + 2.0 * _erf_antiderivative(h))
    return prof, deriv, anti


class Deformation:
    """
    Deformation field of one catalogue kind.

    Analytic kinds know U, its gradient and u; the gridded kind carries
    samples on a PeriodicGrid.
    """

    def __init__(self, kind, **params):
        if kind not in KINDS:
            raise ValueError("Unknown deformation kind '{}', expected one of {}".format(kind, KINDS))
        self.kind = kind
        self.params = params
        if kind == 'linear-gauge':
            for key in ('beta', 'r_c', 'w_c'):
                if key not in params:
                    raise ValueError("linear-gauge deformation needs '{}'".format(key))
            if not params['w_c'] > 0 or params['r_c'] < 0:
                raise ValueError("Window needs r_c >= 0 and w_c > 0")
        elif kind == 'erf-gauge' and 'amplitude' not in params:
            raise ValueError("erf-gauge deformation needs 'amplitude'")
        elif kind == 'gridded':
            if 'grid' not in params or 'u' not in params:
                raise ValueError("gridded deformation needs 'grid' and 'u'")
            params['u'] = np.real(np.asarray(params['u'], dtype=float))

    @classmethod
    def constant(cls):
        return cls('constant')

    @classmethod
    def linear_gauge(cls, beta, r_c, w_c):
        return cls('linear-gauge', beta=float(beta), r_c=float(r_c), w_c=float(w_c))

    @classmethod
    def erf_gauge(cls, amplitude, period=None):
        return cls('erf-gauge', amplitude=float(amplitude), period=period)

    @classmethod
    def gridded(cls, grid, u):
        """:param u: displacement samples of shape (2, N1, N2)"""
        return cls('gridded', grid=grid, u=u)

    def with_period(self, period):
        """Copy of an erf deformation periodised on a strip of the given width."""
        if self.kind != 'erf-gauge':
            return self
        return Deformation.erf_gauge(self.params['amplitude'], period)

    def fits_period(self, period):
        """Whether the windowed linear gauge vanishes before the edges of a strip of the given width."""
        if self.kind == 'linear-gauge':
            return self.params['r_c'] + self.params['w_c'] < 0.5 * period
        return True

    @property
    def bound(self):
        """sup |U| of the analytic kinds."""
        if self.kind == 'constant':
            return 0.0
        if self.kind == 'linear-gauge':
            return 2.0 * abs(self.params['beta']) * (self.params['r_c'] + self.params['w_c'])
        if self.kind == 'erf-gauge':
            return abs(self.params['amplitude']) * (1.0 if self.params.get('period') is None else 3.0)
        return float('nan')

    def _u21(self, y1, with_displacement=False):
        """(U21, d1 U21, u2) of the Y1 only kinds; u2 is None unless requested."""
        if self.kind == 'linear-gauge':
            beta, r_c, w_c = self.params['beta'], self.params['r_c'], self.params['w_c']
            chi = window(y1, r_c, w_c)
            u21 = 2.0 * beta * y1 * chi
            du21 = 2.0 * beta * (chi + y1 * window_derivative(y1, r_c, w_c))
            u2 = _linear_gauge_displacement(y1, beta, r_c, w_c) if with_displacement else None
            return u21, du21, u2
        a = self.params['amplitude']
        prof, deriv, anti = erf_profile(y1, self.params.get('period'))
        return a * prof, a * deriv, a * anti

    def jacobian(self, Y):
        """
        U at points Y of shape (..., 2), as an array (2, 2, ...).
        """
        Y = np.asarray(Y, dtype=float)
        U = np.zeros((2, 2) + Y.shape[:-1])
        if self.kind == 'constant':
            return U
        if self.kind == 'gridded':
            raise ValueError("Gridded deformations are evaluated on their own grid, use jacobian_U")
        U[1, 0] = self._u21(Y[..., 0])[0]
        return U

    def jacobian_gradient(self, Y):
        """d_k U_ij at points Y, as an array (2, 2, 2, ...) indexed [i, j, k]."""
        Y = np.asarray(Y, dtype=float)
        dU = np.zeros((2, 2, 2) + Y.shape[:-1])
        if self.kind in ('linear-gauge', 'erf-gauge'):
            dU[1, 0, 0] = self._u21(Y[..., 0])[1]
        return dU

    def displacement(self, Y):
        """u at points Y, as an array (2, ...)."""
        Y = np.asarray(Y, dtype=float)
        u = np.zeros((2,) + Y.shape[:-1])
        if self.kind in ('linear-gauge', 'erf-gauge'):
            u[1] = self._u21(Y[..., 0], with_displacement=True)[2]
        elif self.kind == 'gridded':
            u = self.params['u']
        return u

    def to_json(self):
        out = {'kind': self.kind}
        out.update({k: v for k, v in self.params.items() if k not in ('grid', 'u')})
        return out


def _linear_gauge_displacement(y1, beta, r_c, w_c):
    """u2(Y1) = int_0^Y1 2 beta s chi(s) ds, by quadrature once per distinct coordinate."""
    y1 = np.asarray(y1, dtype=float)
    values, inverse = np.unique(np.round(y1, 12), return_inverse=True)
    out = np.empty(values.shape)
    for i, y in enumerate(values):
        if abs(y) <= r_c:
            out[i] = beta * y ** 2
        else:
            edge = np.sign(y) * r_c
            tail, _ = integrate.quad(lambda s: 2.0 * beta * s * window(np.array([s]), r_c, w_c)[0],
                                     edge, y, limit=200)
            out[i] = beta * r_c ** 2 + tail
    return out[np.asarray(inverse).reshape(-1)].reshape(y1.shape)


class StrainGrid:
    """Samples of U (and optionally its exact gradient) on a PeriodicGrid."""

    def __init__(self, grid, U, dU=None, deformation=None):
        self.grid = grid
        self.U = np.asarray(U)
        self.dU = dU
        self.deformation = deformation
        if self.U.shape != (2, 2) + grid.shape:
            raise ValueError("Strain samples of shape {} on grid {}".format(self.U.shape, grid.shape))

    @property
    def is_zero(self):
        return not np.any(self.U)


def jacobian_U(deformation, grid):
    """
    Sample U = grad u on a grid.

    Catalogue kinds are evaluated analytically (U and its gradient); gridded
    displacements are differentiated with fourth order central differences.

    :param deformation:     Deformation
    :param grid:            PeriodicGrid
    :return:                StrainGrid
    """
    if deformation.kind == 'gridded':
        src = deformation.params['grid']
        if not src.compatible(grid):
            raise ValueError("Gridded displacement lives on a different grid")
        u = deformation.params['u']
        U = np.empty((2, 2) + grid.shape)
        for i in range(2):
            for j in range(2):
                U[i, j] = grid.fd4_derivative(u[i], j)
        return StrainGrid(grid, U, None, deformation)
    return StrainGrid(grid, deformation.jacobian(grid.coords), deformation.jacobian_gradient(grid.coords),
                      deformation)
