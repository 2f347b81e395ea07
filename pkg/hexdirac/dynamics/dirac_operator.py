"""
Effective Dirac operator on a periodic grid

    D = v [(p1 - A1) sigma1 + (p2 - A2) sigma2] + M(Y),    p = -i grad,

its time evolution (Strang splitting or RK4), energy, and fibre spectra of
Y2 independent configurations.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

import numpy as np
from scipy import linalg, signal

from hexdirac.dynamics.grid import SpinorField, Trajectory
from hexdirac.utils.errors import FiberTooLarge, GridMismatch
from hexdirac.utils.math import PauliBasis, hermitian_exp

HERMITIAN_TOL = 1e-12

# largest dense fibre matrix dimension accepted by dirac_spectrum
MAX_FIBER = 4096


class DiracOperatorSpec:
    """Velocity, gauge potential and local Hermitian mass of a Dirac operator."""

    def __init__(self, grid, v, A1=None, A2=None, M=None):
        """
        :param grid:    PeriodicGrid
        :param v:       velocity (> 0)
        :param A1:      real field or None for zero
        :param A2:      real field or None for zero
        :param M:       (2, 2, N1, N2) Hermitian field or None for zero
        """
        if not v > 0:
            raise ValueError("Dirac velocity must be positive, got {}".format(v))
        self.grid = grid
        self.v = float(v)
        zero = np.zeros(grid.shape)
        self.A1 = zero if A1 is None else np.real(np.asarray(A1)) * np.ones(grid.shape)
        self.A2 = zero if A2 is None else np.real(np.asarray(A2)) * np.ones(grid.shape)
        if M is None:
            self.M = np.zeros((2, 2) + grid.shape, dtype=complex)
        else:
            self.M = np.asarray(M, dtype=complex) * np.ones((2, 2) + grid.shape)
            herm = np.max(np.abs(self.M - np.conj(np.swapaxes(self.M, 0, 1))))
            if herm > HERMITIAN_TOL * max(1.0, np.max(np.abs(self.M))):
                raise ValueError("Mass term is not Hermitian (deviation {:.3e})".format(herm))

    @classmethod
    def from_gauge(cls, gauge):
        """Operator of a GaugeFieldData: M = W sigma0."""
        M = np.zeros((2, 2) + gauge.grid.shape, dtype=complex)
        M[0, 0] = gauge.W
        M[1, 1] = gauge.W
        return cls(gauge.grid, gauge.v, gauge.A1, gauge.A2, M)

    @property
    def has_mass(self):
        return bool(np.any(self.M != 0))

    def local_components(self):
        """Pauli coefficients of the multiplicative part -v A.sigma + M."""
        h0, h1, h2, h3 = PauliBasis.decompose(self.M)
        return (np.real(h0), np.real(h1) - self.v * self.A1, np.real(h2) - self.v * self.A2, np.real(h3))


def _momentum(grid, f, axis):
    return grid.ifft(grid.derivative_symbol[..., axis] * grid.fft(f))


def _covariant(spec, psi):
    """Pi_a psi = (p_a - A_a) psi for both components."""
    g = spec.grid
    return (_momentum(g, psi, 0) - spec.A1 * psi,
            _momentum(g, psi, 1) - spec.A2 * psi)


def apply_dirac(spec, psi):
    """
    D psi.

    :param spec:    DiracOperatorSpec
    :param psi:     SpinorField on spec.grid
    :return:        SpinorField
    """
    spec.grid.check_compatible(psi.grid)
    u, w = _covariant(spec, psi.data)
    m = spec.M
    out = np.empty_like(psi.data)
    out[0] = spec.v * (u[1] - 1j * w[1]) + m[0, 0] * psi.data[0] + m[0, 1] * psi.data[1]
    out[1] = spec.v * (u[0] + 1j * w[0]) + m[1, 0] * psi.data[0] + m[1, 1] * psi.data[1]
    return SpinorField(spec.grid, out)


def energy(spec, psi):
    """Re <psi, D psi>."""
    return float(np.real(psi.inner(apply_dirac(spec, psi))))


def _apply_local(U, data):
    return np.stack([U[0, 0] * data[0] + U[0, 1] * data[1],
                     U[1, 0] * data[0] + U[1, 1] * data[1]])


def _strang_factors(spec, dt):
    g = spec.grid
    q = spec.v * g.derivative_symbol
    kinetic = hermitian_exp(0.0, q[..., 0], q[..., 1], np.zeros(g.shape), dt)
    h0, h1, h2, h3 = spec.local_components()
    local = hermitian_exp(h0, h1, h2, h3, 0.5 * dt)
    return kinetic, local


def _strang_step(spec, data, factors):
    kinetic, local = factors
    data = _apply_local(local, data)
    F = spec.grid.fft(data)
    data = spec.grid.ifft(_apply_local(kinetic, F))
    return _apply_local(local, data)


def _rk4_step(spec, data, dt):
    def rhs(x):
        return -1j * apply_dirac(spec, SpinorField(spec.grid, x)).data

    k1 = rhs(data)
    k2 = rhs(data + 0.5 * dt * k1)
    k3 = rhs(data + 0.5 * dt * k2)
    k4 = rhs(data + dt * k3)
    return data + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def evolve(spec, psi0, dt, T, stride=1, method='strang'):
    """
    Solve i d_t psi = D psi on [0, T].

    :param spec:    DiracOperatorSpec
    :param psi0:    initial SpinorField
    :param dt:      time step
    :param T:       final time
    :param stride:  store every stride-th step (t = 0 and t = T always stored)
    :param method:  'strang' (unitary split step) or 'rk4'
    :return:        Trajectory
    """
    spec.grid.check_compatible(psi0.grid)
    if not dt > 0 or T < 0:
        raise ValueError("Need dt > 0 and T >= 0, got dt={} T={}".format(dt, T))
    nsteps = int(round(T / dt))
    if nsteps > 0:
        dt = T / nsteps

    traj = Trajectory(spec.grid)
    traj.append(0.0, psi0.copy())
    data = psi0.data.copy()

    if method == 'strang':
        factors = _strang_factors(spec, dt)
    elif method != 'rk4':
        raise ValueError("Unknown time stepper '{}'".format(method))

    for step in range(1, nsteps + 1):
        if method == 'strang':
            data = _strang_step(spec, data, factors)
        else:
            data = _rk4_step(spec, data, dt)
        if step % stride == 0 or step == nsteps:
            traj.append(step * dt, SpinorField(spec.grid, data.copy()))

    norms = np.array([s.norm() for s in traj.states])
    traj.diagnostics['norm_drift'] = float(np.max(np.abs(norms - norms[0]))) if len(norms) else 0.0
    logging.debug("Dirac evolution: {} steps of {:.3e}, norm drift {:.3e}".format(
        nsteps, dt, traj.diagnostics['norm_drift']))
    return traj


def square_identity_residual(spec, psi, B0):
    """
    ||D^2 psi - v^2 (Pi^2 psi - B0 sigma3 psi)|| / ||psi|| for a massless operator.
    """
    d2 = apply_dirac(spec, apply_dirac(spec, psi)).data
    u, w = _covariant(spec, psi.data)
    uu, _ = _covariant(spec, u)
    _, ww = _covariant(spec, w)
    rhs = uu + ww
    rhs[0] = rhs[0] - B0 * psi.data[0]
    rhs[1] = rhs[1] + B0 * psi.data[1]
    rhs = spec.v ** 2 * rhs
    return float(spec.grid.norm(d2 - rhs) / psi.norm())


def _profile(field, name):
    col = field[:, 0]
    if np.max(np.abs(field - col[:, None])) > 1e-12 * max(1.0, np.max(np.abs(field))):
        raise GridMismatch("{} depends on Y2, the fibre decomposition does not apply".format(name))
    return col


def dirac_spectrum(spec, k, count=None, center=0.0, max_fiber=MAX_FIBER):
    """
    Eigenvalues of the fibre operator D_k of a Y2 independent configuration.

    An even number of Y1 samples is Fourier resampled to the next odd number so
    that the spectral derivative matrix is Hermitian without a Nyquist mode.

    :param spec:        DiracOperatorSpec on a rectangular grid
    :param k:           Y2 momentum
    :param count:       number of eigenvalues nearest `center` (None for all)
    :param center:      centre of the spectral window
    :param max_fiber:   largest dense matrix dimension
    :return:            sorted eigenvalues
    """
    g = spec.grid
    if not g.is_rectangular:
        raise GridMismatch("Fibre spectra need a rectangular grid")

    profiles = [_profile(spec.A1, 'A1'), _profile(spec.A2, 'A2')]
    profiles += [_profile(spec.M[i, j], 'M') for i in range(2) for j in range(2)]

    n = g.shape[0]
    if n % 2 == 0:
        n += 1
        profiles = [signal.resample(p, n) for p in profiles]
    if 2 * n > max_fiber:
        raise FiberTooLarge("Fibre matrix of dimension {} exceeds the guard {}".format(2 * n, max_fiber))

    L1 = abs(g.cell[0, 0])
    q = 2.0 * np.pi * np.fft.fftfreq(n, d=L1 / n)
    eye = np.eye(n)
    P = np.fft.ifft(q[:, None] * np.fft.fft(eye, axis=0), axis=0)
    P = 0.5 * (P + P.conj().T)

    a1, a2, m00, m01, m10, m11 = profiles
    pi1 = P - np.diag(np.real(a1))
    pi2 = np.diag(k - np.real(a2))
    H = np.zeros((2 * n, 2 * n), dtype=complex)
    H[:n, :n] = np.diag(m00)
    H[n:, n:] = np.diag(m11)
    H[:n, n:] = spec.v * (pi1 - 1j * pi2) + np.diag(m01)
    H[n:, :n] = spec.v * (pi1 + 1j * pi2) + np.diag(m10)

    evals = linalg.eigh(H, eigvals_only=True)
    if count is None:
        return evals
    nearest = np.argsort(np.abs(evals - center), kind='stable')[:count]
    return np.sort(evals[nearest])
