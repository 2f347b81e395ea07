"""
Honeycomb lattice geometry: direct and dual bases, zone corners and the
threefold rotation shared by every other module.

Conventions: v1 = scale (sqrt(3)/2, 1/2), v2 = R^{-1} v1 = scale (-sqrt(3)/2, 1/2)
with R the clockwise 2 pi / 3 rotation. In this orientation the tau
eigenvector Phi1 of a Dirac pair satisfies <Phi1, calA Phi2> ~ (1, i). The dual
vectors k1, k2 meet at 60 degrees and the zone corner of the C3 orbit is
K = (k1 + k2) / 3.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import itertools

import numpy as np

from hexdirac.utils.errors import ConventionError

ROTATION = np.array([[-0.5, np.sqrt(3.0) / 2.0],
                     [-np.sqrt(3.0) / 2.0, -0.5]])

TAU = np.exp(2j * np.pi / 3.0)

# search window of reduce_to_bz, in units of the dual basis
BZ_SEARCH = 2


class HoneycombLattice:
    """
    Triangular lattice carrying the honeycomb symmetry group.

    Instances are immutable value objects; arrays are flagged read-only.
    """

    def __init__(self, scale=1.0):
        """
        :param scale:       length of the direct generators (> 0)
        """
        if not scale > 0:
            raise ValueError("Lattice scale must be positive, got {}".format(scale))

        self.scale = float(scale)
        self.R = ROTATION.copy()
        self.Rinv = ROTATION.T.copy()
        self.tau = TAU

        self.v1 = self.scale * np.array([np.sqrt(3.0) / 2.0, 0.5])
        self.v2 = self.Rinv.dot(self.v1)

        # duals from v_i . k_j = 2 pi delta_ij
        direct = np.vstack([self.v1, self.v2])
        dual = 2.0 * np.pi * np.linalg.solve(direct, np.eye(2))
        self.k1 = dual[:, 0]
        self.k2 = dual[:, 1]

        self.cellArea = abs(np.linalg.det(direct))
        self.bzArea = abs(np.linalg.det(dual))

        self.K = (self.k1 + self.k2) / 3.0
        self.Kprime = -self.K

        # integer action of R on (k1, k2): R [k1 k2] = [k1 k2] rot_int
        self.rot_int = np.rint(np.linalg.solve(self.dual_matrix, self.R.dot(self.dual_matrix))).astype(int)
        self.K_coords = np.linalg.solve(self.dual_matrix, self.K)
        # R K - K in integer coordinates
        shift = np.linalg.solve(self.dual_matrix, self.R.dot(self.K) - self.K)
        self.rot_shift = np.rint(shift).astype(int)
        if np.max(np.abs(shift - self.rot_shift)) > 1e-10:
            raise ConventionError("R K - K is not a reciprocal lattice vector")

        for arr in (self.R, self.Rinv, self.v1, self.v2, self.k1, self.k2, self.K, self.Kprime,
                    self.rot_int, self.K_coords, self.rot_shift):
            arr.setflags(write=False)

    @property
    def direct_matrix(self):
        """Columns v1, v2."""
        return np.column_stack([self.v1, self.v2])

    @property
    def dual_matrix(self):
        """Columns k1, k2."""
        return np.column_stack([self.k1, self.k2])

    def reciprocal_vector(self, m):
        """G = m1 k1 + m2 k2 for an index or an (n, 2) array of indices."""
        m = np.asarray(m)
        return m.dot(self.dual_matrix.T)

    def direct_vector(self, n):
        n = np.asarray(n)
        return n.dot(self.direct_matrix.T)

    def dual_coordinates(self, k):
        """Coordinates of k (or an (n, 2) array) in the basis k1, k2."""
        k = np.asarray(k, dtype=float)
        return np.linalg.solve(self.dual_matrix, k.T).T

    def high_symmetry_points(self):
        """Named high symmetry momenta used for band paths."""
        return {'G': np.zeros(2), 'K': np.array(self.K), 'Kp': np.array(self.Kprime),
                'M': 0.5 * np.array(self.k1)}

    def c3_centres(self):
        """Points y0 of the unit cell with R y0 - y0 in the lattice."""
        y0 = (self.v1 - self.v2) / 3.0
        return [np.zeros(2), y0, -y0]


def build_lattice(scale=1.0):
    """
    Build the honeycomb lattice.

    :param scale:       length of the direct generators
    :return:            HoneycombLattice
    """
    return HoneycombLattice(scale)


def reduce_to_bz(lattice, k):
    """
    Closest translate of k to the origin (first Brillouin zone).

    Ties are broken by lexicographic order of the translating index (m1, m2).

    :param lattice:     HoneycombLattice
    :param k:           quasi-momentum
    :return:            reduced quasi-momentum
    """
    k = np.asarray(k, dtype=float)
    coords = lattice.dual_coordinates(k)
    base = np.rint(coords)
    k0 = k - lattice.reciprocal_vector(base)

    best = None
    for m in itertools.product(range(-BZ_SEARCH, BZ_SEARCH + 1), repeat=2):
        cand = k0 - lattice.reciprocal_vector(np.array(m, dtype=float))
        dist = np.dot(cand, cand)
        key = (round(dist, 12), m)
        if best is None or key < best[0]:
            best = (key, cand)

    return best[1]


def rotation_image_index(lattice, m, tol=1e-10):
    """
    Index G' with R (K + G) = K + G'.

    :param lattice:     HoneycombLattice
    :param m:           index (m1, m2) of G, or an (n, 2) array of indices
    :param tol:         tolerance of the exactness check
    :return:            (image index array, max deviation from integrality)
    """
    m = np.asarray(m, dtype=int)
    image = m.dot(lattice.rot_int.T) + lattice.rot_shift

    # floating point cross check of the integer action
    q = lattice.K + lattice.reciprocal_vector(m.astype(float))
    rq = q.dot(lattice.R.T)
    coords = lattice.dual_coordinates(rq - lattice.K)
    deviation = float(np.max(np.abs(coords - image))) if np.size(coords) else 0.0
    if deviation > tol * max(1.0, float(np.max(np.abs(coords))) if np.size(coords) else 1.0):
        raise ConventionError("R(K+G) - K is not a lattice vector (deviation {:.3e})".format(deviation))

    return image, deviation
