"""
Periodic spectral grids over a parallelogram Y = origin + S s, s in [0, 1)^2,
and the fields living on them.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import numpy as np

from hexdirac.utils.errors import GridMismatch


class PeriodicGrid:
    """
    N1 x N2 sampling of a torus with cell matrix S (columns are the periods).

    Derivatives are spectral; the Nyquist mode of an even axis has zero
    first derivative so that -i grad stays Hermitian.
    """

    def __init__(self, cell, shape, origin=None):
        """
        :param cell:        2x2 matrix whose columns are the two periods
        :param shape:       (N1, N2)
        :param origin:      lower corner of the sampled parallelogram
        """
        self.cell = np.array(cell, dtype=float)
        self.shape = (int(shape[0]), int(shape[1]))
        self.origin = np.zeros(2) if origin is None else np.array(origin, dtype=float)
        self.dA = abs(np.linalg.det(self.cell)) / (self.shape[0] * self.shape[1])

        s1 = np.arange(self.shape[0]) / float(self.shape[0])
        s2 = np.arange(self.shape[1]) / float(self.shape[1])
        S1, S2 = np.meshgrid(s1, s2, indexing='ij')
        self.coords = self.origin + S1[..., None] * self.cell[:, 0] + S2[..., None] * self.cell[:, 1]

        j1 = np.fft.fftfreq(self.shape[0]) * self.shape[0]
        j2 = np.fft.fftfreq(self.shape[1]) * self.shape[1]
        J1, J2 = np.meshgrid(j1, j2, indexing='ij')
        self.frequencies = np.stack([J1, J2], axis=-1)
        self.wavevectors = 2.0 * np.pi * self.frequencies.dot(np.linalg.inv(self.cell))

        deriv = self.frequencies.copy()
        for axis, n in enumerate(self.shape):
            if n % 2 == 0:
                deriv[..., axis] = np.where(np.abs(deriv[..., axis]) == n // 2, 0.0, deriv[..., axis])
        self.derivative_symbol = 2.0 * np.pi * deriv.dot(np.linalg.inv(self.cell))

    @classmethod
    def box(cls, L1, L2, N1, N2):
        """Rectangle [-L1/2, L1/2) x [-L2/2, L2/2)."""
        return cls(np.diag([L1, L2]), (N1, N2), origin=(-0.5 * L1, -0.5 * L2))

    @classmethod
    def supercell(cls, lattice, N, n, scale=1.0):
        """
        N x N cells of the honeycomb lattice with n points per cell and direction,
        periods N v1 and N (v1 + v2), centred on the origin, all lengths multiplied by scale.
        """
        cell = scale * N * np.column_stack([lattice.v1, lattice.v1 + lattice.v2])
        return cls(cell, (N * n, N * n), origin=-0.5 * cell.dot(np.ones(2)))

    def scaled(self, factor, shape):
        """Same torus scaled by factor, resampled on a new shape."""
        return PeriodicGrid(factor * self.cell, shape, factor * self.origin)

    @property
    def Y1(self):
        return self.coords[..., 0]

    @property
    def Y2(self):
        return self.coords[..., 1]

    @property
    def is_rectangular(self):
        return self.cell[0, 1] == 0.0 and self.cell[1, 0] == 0.0

    @property
    def y1_period(self):
        """Period of functions of Y1 alone, when the second period is along Y2."""
        if abs(self.cell[0, 1]) > 1e-14 * abs(self.cell[0, 0]):
            return None
        return abs(self.cell[0, 0])

    @property
    def y2_period(self):
        return abs(self.cell[1, 1]) if self.y1_period is not None else None

    def compatible(self, other):
        return self.shape == other.shape and np.allclose(self.cell, other.cell) and \
            np.allclose(self.origin, other.origin)

    def check_compatible(self, other):
        if not self.compatible(other):
            raise GridMismatch("Fields live on different grids")

    def fft(self, f):
        return np.fft.fft2(f, axes=(-2, -1))

    def ifft(self, f):
        return np.fft.ifft2(f, axes=(-2, -1))

    def derivative(self, f, axis):
        """Spectral d/dY_axis of a periodic field (leading dimensions allowed)."""
        return self.ifft(1j * self.derivative_symbol[..., axis] * self.fft(f))

    def gradient(self, f):
        F = self.fft(f)
        return [self.ifft(1j * self.derivative_symbol[..., a] * F) for a in range(2)]

    def divergence(self, h1, h2):
        return self.ifft(1j * (self.derivative_symbol[..., 0] * self.fft(h1) +
                               self.derivative_symbol[..., 1] * self.fft(h2)))

    def fd4_derivative(self, f, axis):
        """Fourth order central differences, chained to Y coordinates."""
        inv = np.linalg.inv(self.cell)
        out = 0.0
        for a in range(2):
            h = 1.0 / self.shape[a]
            ax = f.ndim - 2 + a
            ds = (-np.roll(f, -2, axis=ax) + 8.0 * np.roll(f, -1, axis=ax) - 8.0 * np.roll(f, 1, axis=ax) +
                  np.roll(f, 2, axis=ax)) / (12.0 * h)
            out = out + ds * inv[a, axis]
        return out

    def inner(self, f, g):
        return np.vdot(f, g) * self.dA

    def norm(self, f):
        return np.sqrt(np.sum(np.abs(f) ** 2) * self.dA)

    def resample(self, f, shape):
        """
        Fourier interpolation to another sampling of the same parameter square
        (zero padding or truncation in the shared integer frequencies).
        """
        shape = (int(shape[0]), int(shape[1]))
        F = self.fft(f) / (self.shape[0] * self.shape[1])
        out = np.zeros(f.shape[:-2] + shape, dtype=complex)
        j1 = (np.fft.fftfreq(self.shape[0]) * self.shape[0]).astype(int)
        j2 = (np.fft.fftfreq(self.shape[1]) * self.shape[1]).astype(int)
        keep1 = np.abs(j1) < min(self.shape[0], shape[0]) / 2.0
        keep2 = np.abs(j2) < min(self.shape[1], shape[1]) / 2.0
        rows = np.mod(j1[keep1], shape[0])
        cols = np.mod(j2[keep2], shape[1])
        out[..., rows[:, None], cols[None, :]] = F[..., np.where(keep1)[0][:, None], np.where(keep2)[0][None, :]]
        return np.fft.ifft2(out, axes=(-2, -1)) * (shape[0] * shape[1])

    def edge_ratio(self, f):
        """max |f| on the boundary rows/columns of the parameter square over max |f|."""
        mag = np.abs(f)
        peak = np.max(mag)
        if peak == 0:
            return 0.0
        edge = max(np.max(mag[..., 0, :]), np.max(mag[..., :, 0]), np.max(mag[..., -1, :]), np.max(mag[..., :, -1]))
        return float(edge / peak)


class SpinorField:
    """Two-component complex field on a PeriodicGrid, data of shape (2, N1, N2)."""

    __array_ufunc__ = None

    def __init__(self, grid, data):
        self.grid = grid
        self.data = np.asarray(data, dtype=complex)
        if self.data.shape != (2,) + grid.shape:
            raise GridMismatch("Spinor data of shape {} on grid {}".format(self.data.shape, grid.shape))

    @classmethod
    def from_components(cls, grid, a1, a2):
        return cls(grid, np.stack([a1, a2]))

    @property
    def a1(self):
        return self.data[0]

    @property
    def a2(self):
        return self.data[1]

    def copy(self):
        return SpinorField(self.grid, self.data.copy())

    def __add__(self, other):
        self.grid.check_compatible(other.grid)
        return SpinorField(self.grid, self.data + other.data)

    def __sub__(self, other):
        self.grid.check_compatible(other.grid)
        return SpinorField(self.grid, self.data - other.data)

    def __mul__(self, scalar):
        return SpinorField(self.grid, scalar * self.data)

    __rmul__ = __mul__

    def inner(self, other):
        self.grid.check_compatible(other.grid)
        return self.grid.inner(self.data, other.data)

    def norm(self):
        return self.grid.norm(self.data)

    def density(self):
        return np.sum(np.abs(self.data) ** 2, axis=0)

    def normalized(self):
        return (1.0 / self.norm()) * self


class Trajectory:
    """Snapshots of a time evolution on one grid."""

    def __init__(self, grid):
        self.grid = grid
        self.times = []
        self.states = []
        self.diagnostics = {}

    def append(self, t, state):
        self.times.append(float(t))
        self.states.append(state)

    def __len__(self):
        return len(self.times)

    @property
    def final(self):
        return self.states[-1]
