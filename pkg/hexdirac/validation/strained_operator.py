"""
Strained continuum operator on a periodic supercell grid

    L^eps f = -detJ div(C grad f) + V f,    C = J A J^T / detJ,
    J(y) = (Id + eps U(eps y))^{-1},

with spectral derivatives and pointwise coefficient products.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

import numpy as np

from hexdirac.utils.errors import AliasingError, EllipticityError, GridMismatch, NumericalFailure

DETJ_FLOOR = 1e-3

COMMENSURATE_TOL = 1e-8


class StrainedOperator:
    """Coefficient grids of L^eps for a medium, a deformation and a strain scale."""

    def __init__(self, medium, deformation, epsilon, grid):
        """
        :param medium:          FourierMedium
        :param deformation:     Deformation evaluated at Y = eps y
        :param epsilon:         strain scale in [0, 1)
        :param grid:            supercell PeriodicGrid
        """
        if not 0 <= epsilon < 1:
            raise ValueError("Strain scale must lie in [0, 1), got {}".format(epsilon))
        self.medium = medium
        self.deformation = deformation
        self.epsilon = float(epsilon)
        self.grid = grid

        y = grid.coords
        # (2, 2, N1, N2) layout for every matrix field
        self.A = np.moveaxis(medium.A_at(y), (-2, -1), (0, 1))
        self.V = np.real_if_close(medium.V_at(y))
        self.U = deformation.jacobian(epsilon * y)

        eye = np.eye(2)[:, :, None, None]
        F = eye + epsilon * self.U
        detF = F[0, 0] * F[1, 1] - F[0, 1] * F[1, 0]
        if np.min(np.abs(detF)) < DETJ_FLOOR or np.min(detF) <= 0:
            raise NumericalFailure("Deformation gradient degenerates (min det {:.3e})".format(np.min(detF)))
        self.detJ = 1.0 / detF
        J = np.empty_like(F)
        J[0, 0] = F[1, 1] / detF
        J[1, 1] = F[0, 0] / detF
        J[0, 1] = -F[0, 1] / detF
        J[1, 0] = -F[1, 0] / detF
        self.J = J
        self.C = np.einsum('ia...,ab...,jb...->ij...', J, self.A, J) / self.detJ

        herm = 0.5 * (self.C + np.conj(np.swapaxes(self.C, 0, 1)))
        lam = np.min(np.linalg.eigvalsh(np.moveaxis(herm, (0, 1), (-2, -1))))
        if lam <= 0:
            raise EllipticityError("Strained coefficient C loses positivity (min eigenvalue {:.3e})".format(lam))
        logging.debug("Strained operator eps={}: detJ in [{:.6f}, {:.6f}], min eig C {:.4e}".format(
            epsilon, np.min(self.detJ), np.max(self.detJ), lam))

    @property
    def potential_free(self):
        return not np.any(self.V)

    def weighted_inner(self, f, g):
        """<f, g>_w = int conj(f) g / detJ."""
        return np.vdot(f, g / self.detJ) * self.grid.dA

    def weighted_norm(self, f):
        return np.sqrt(np.real(self.weighted_inner(f, f)))


def _flux(grid, coeff, f):
    g = grid.gradient(f)
    return [coeff[0, 0] * g[0] + coeff[0, 1] * g[1], coeff[1, 0] * g[0] + coeff[1, 1] * g[1]]


def apply_Leps(op, f):
    """g = grad f, h = C g, result = -detJ div h + V f."""
    h = _flux(op.grid, op.C, f)
    return -op.detJ * op.grid.divergence(h[0], h[1]) + op.V * f


def apply_L0_grid(op, f):
    """Unstrained operator -div(A grad f) + V f on the same grid."""
    h = _flux(op.grid, op.A, f)
    return -op.grid.divergence(h[0], h[1]) + op.V * f


def grid_frakA(op, f):
    """frakA f on the grid: entries [i][j] = d_l(a_li d_j f) + d_j(a_il d_l f)."""
    g = op.grid
    grad = g.gradient(f)
    out = np.empty((2, 2) + g.shape, dtype=complex)
    for i in range(2):
        for j in range(2):
            first = g.divergence(op.A[0, i] * grad[j], op.A[1, i] * grad[j])
            second = g.derivative(op.A[i, 0] * grad[0] + op.A[i, 1] * grad[1], j)
            out[i, j] = first + second
    return out


def expansion_residual(op, f):
    """
    || L^eps f - L^0 f - eps Tr(U(eps .) frakA f) ||_{L2}.

    :return:    residual norm
    """
    frak = grid_frakA(op, f)
    trace = np.einsum('ji...,ij...->...', op.U, frak)
    r = apply_Leps(op, f) - apply_L0_grid(op, f) - op.epsilon * trace
    return float(op.grid.norm(r))


def sample_field(field, grid):
    """
    Values of a quasi-periodic field on a supercell grid, placed exactly in
    Fourier space.

    :raises GridMismatch:   when some k + G is not a frequency of the supercell
    :raises AliasingError:  when two coefficients land on the same grid frequency
    """
    q = field.wavevectors
    freq = q.dot(grid.cell) / (2.0 * np.pi)
    j = np.rint(freq)
    if np.max(np.abs(freq - j)) > COMMENSURATE_TOL:
        raise GridMismatch("Field momentum is not commensurate with the supercell")
    j = j.astype(int)
    j1 = np.mod(j[:, 0], grid.shape[0])
    j2 = np.mod(j[:, 1], grid.shape[1])
    flat = j1 * grid.shape[1] + j2
    if len(np.unique(flat)) != len(flat):
        raise AliasingError("Field support of {} modes aliases on a {} grid".format(len(flat), grid.shape))

    F = np.zeros(grid.shape, dtype=complex)
    F[j1, j2] = field.coeffs * np.exp(1j * q.dot(grid.origin))
    return np.fft.ifft2(F) * (grid.shape[0] * grid.shape[1])
