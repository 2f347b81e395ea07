"""
Quasi-periodic fields stored as truncated plane-wave sums

    f(y) = sum_G c_G exp(i (k + G) . y).

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import numpy as np

MOMENTUM_TOL = 1e-10


def accumulate(indices, values):
    """
    Merge duplicate indices by summing their values.

    :param indices:     (n, 2) integer array
    :param values:      array with leading dimension n
    :return:            (unique indices, summed values), indices in lexicographic order
    """
    indices = np.asarray(indices, dtype=int).reshape(-1, 2)
    values = np.asarray(values)
    if indices.shape[0] == 0:
        return indices, values
    uniq, inverse = np.unique(indices, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    out = np.zeros((uniq.shape[0],) + values.shape[1:], dtype=complex)
    np.add.at(out, inverse, values)
    return uniq, out


class QuasiPeriodicField:
    """k-quasi-periodic function in plane-wave representation."""

    # numpy scalars defer to __rmul__ instead of building object arrays
    __array_ufunc__ = None

    def __init__(self, lattice, k, indices, coeffs):
        """
        :param lattice:     HoneycombLattice
        :param k:           base momentum
        :param indices:     (n, 2) integer reciprocal indices
        :param coeffs:      (n,) complex amplitudes
        """
        self.lattice = lattice
        self.k = np.array(k, dtype=float)
        self.indices = np.asarray(indices, dtype=int).reshape(-1, 2)
        self.coeffs = np.asarray(coeffs, dtype=complex).reshape(-1)
        if self.indices.shape[0] != self.coeffs.shape[0]:
            raise ValueError("indices and coefficients differ in length")

    @classmethod
    def zeros_like(cls, other):
        return cls(other.lattice, other.k, other.indices, np.zeros_like(other.coeffs))

    @classmethod
    def random(cls, lattice, k, cutoff, rng):
        """Random field on the box max(|m1|, |m2|) <= cutoff."""
        r = np.arange(-cutoff, cutoff + 1)
        idx = np.array([(a, b) for a in r for b in r])
        coeffs = rng.standard_normal(len(idx)) + 1j * rng.standard_normal(len(idx))
        return cls(lattice, k, idx, coeffs)

    @property
    def cutoff(self):
        if self.indices.shape[0] == 0:
            return 0
        return int(np.max(np.abs(self.indices)))

    @property
    def wavevectors(self):
        """k + G for every stored coefficient, shape (n, 2)."""
        return self.k + self.lattice.reciprocal_vector(self.indices.astype(float))

    def same_fiber(self, other):
        return np.max(np.abs(self.k - other.k)) < MOMENTUM_TOL

    def _check_fiber(self, other):
        if not self.same_fiber(other):
            raise ValueError("fields live at different base momenta {} and {}".format(self.k, other.k))

    def __add__(self, other):
        self._check_fiber(other)
        idx, val = accumulate(np.vstack([self.indices, other.indices]),
                              np.concatenate([self.coeffs, other.coeffs]))
        return QuasiPeriodicField(self.lattice, self.k, idx, val)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        return QuasiPeriodicField(self.lattice, self.k, self.indices, scalar * self.coeffs)

    __rmul__ = __mul__

    def coefficient_map(self):
        return {tuple(m): c for m, c in zip(self.indices.tolist(), self.coeffs)}

    def aligned(self, other):
        """Coefficient vectors of self and other on the union of their index sets."""
        self._check_fiber(other)
        union = np.unique(np.vstack([self.indices, other.indices]), axis=0)
        return union, _scatter(union, self), _scatter(union, other)

    def inner(self, other):
        """<self, other> = cellArea sum conj(self_G) other_G."""
        _, a, b = self.aligned(other)
        return self.lattice.cellArea * np.vdot(a, b)

    def norm(self):
        return np.sqrt(self.lattice.cellArea * np.sum(np.abs(self.coeffs) ** 2))

    def evaluate(self, points):
        """Values at real-space points of shape (..., 2)."""
        points = np.asarray(points, dtype=float)
        phase = np.exp(1j * points.reshape(-1, 2).dot(self.wavevectors.T))
        return phase.dot(self.coeffs).reshape(points.shape[:-1])

    def restricted_to(self, indices):
        """Coefficient vector on a prescribed index list (zeros where absent)."""
        return _scatter(np.asarray(indices, dtype=int), self)


def _scatter(indices, field):
    lookup = field.coefficient_map()
    return np.array([lookup.get(tuple(m), 0.0) for m in np.asarray(indices).tolist()], dtype=complex)
