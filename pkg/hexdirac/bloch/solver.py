"""
Plane-wave Galerkin discretization of the Bloch fibres L(k) and band
computations along momentum paths.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from scipy import linalg

from hexdirac.bloch.symmetry import wrap_indices
from hexdirac.media.fields import QuasiPeriodicField
from hexdirac.utils.errors import EigensolverError

RES_TOL = 1e-8


class PlaneWaveBasis:
    """
    Ordered reciprocal indices of a fibre discretization.

    The default index set is the disk |k + G| <= (M + 1/2) h, h the spacing
    between reciprocal lattice rows. It is closed under m -> -m at the zone
    centre and under the rotation at the zone corners.
    """

    def __init__(self, lattice, k, M):
        """
        :param lattice:     HoneycombLattice
        :param k:           base momentum
        :param M:           truncation (number of reciprocal rows kept around k)
        """
        self.lattice = lattice
        self.k = np.array(k, dtype=float)
        self.M = int(M)
        self.alias = None

        h = 0.5 * np.sqrt(3.0) * np.linalg.norm(lattice.k1)
        radius = (self.M + 0.5) * h
        centre = np.rint(-lattice.dual_coordinates(self.k)).astype(int)
        width = int(np.ceil(radius / h)) + 1
        r = np.arange(-width, width + 1)
        cand = np.array([(centre[0] + a, centre[1] + b) for a in r for b in r])
        q = self.k + lattice.reciprocal_vector(cand.astype(float))
        dist = np.sqrt(np.sum(q ** 2, axis=1))
        keep = dist <= radius * (1 + 1e-12)
        cand, dist = cand[keep], dist[keep]
        order = np.lexsort((cand[:, 1], cand[:, 0], np.round(dist, 10)))
        self.indices = cand[order]

    @classmethod
    def grid_box(cls, lattice, k, n):
        """
        Grid-consistent basis: the n^2 indices with m1 and m1 + m2 in
        {-n/2, ..., n/2 - 1}, coefficient differences reduced modulo n. The
        fibre matrix then equals the spectral collocation operator of a
        supercell grid with n points per cell and direction.
        """
        if n % 2:
            raise ValueError("grid_box needs an even number of points per cell, got {}".format(n))
        basis = cls.__new__(cls)
        basis.lattice = lattice
        basis.k = np.array(k, dtype=float)
        basis.M = n // 2
        basis.alias = int(n)
        r = np.arange(-n // 2, n // 2)
        basis.indices = np.array([(a, b - a) for a in r for b in r], dtype=int)
        return basis

    def __len__(self):
        return self.indices.shape[0]

    @property
    def wavevectors(self):
        return self.k + self.lattice.reciprocal_vector(self.indices.astype(float))

    def at_momentum(self, k):
        """Same index set attached to another base momentum."""
        other = PlaneWaveBasis.__new__(PlaneWaveBasis)
        other.lattice = self.lattice
        other.k = np.array(k, dtype=float)
        other.M = self.M
        other.alias = self.alias
        other.indices = self.indices
        return other

    def field(self, vector):
        """QuasiPeriodicField from a coefficient vector on this basis."""
        return QuasiPeriodicField(self.lattice, self.k, self.indices, vector)

    def vector(self, field):
        """Coefficient vector of a field on this basis."""
        return field.restricted_to(self.indices)


class BandResult:
    """Eigenpairs of one fibre, ascending, eigenvectors unit in L2 of the cell."""

    def __init__(self, k, eigenvalues, vectors, basis):
        self.k = np.array(k, dtype=float)
        self.eigenvalues = np.asarray(eigenvalues)
        self.vectors = vectors
        self.basis = basis
        self.eigenvectors = [basis.field(vectors[:, b] / np.sqrt(basis.lattice.cellArea))
                             for b in range(vectors.shape[1])]


def _medium_lookup(medium, diff):
    """Row of the medium coefficient list for each index difference, -1 if absent."""
    c = medium.cutoff
    table = -np.ones((2 * c + 1, 2 * c + 1), dtype=int)
    table[medium.indices[:, 0] + c, medium.indices[:, 1] + c] = np.arange(medium.indices.shape[0])
    inside = np.all(np.abs(diff) <= c, axis=-1)
    rows = -np.ones(diff.shape[:-1], dtype=int)
    rows[inside] = table[diff[inside][:, 0] + c, diff[inside][:, 1] + c]
    return rows


def assemble_fiber_matrix(medium, k, basis):
    """
    Galerkin matrix of L(k) on a plane-wave basis.

    Entry (G', G) = (k+G').Ahat(G'-G)(k+G) + Vhat(G'-G).

    :param medium:      FourierMedium
    :param k:           momentum
    :param basis:       PlaneWaveBasis
    :return:            Hermitian matrix (complex ndarray)
    """
    if basis.alias is None and basis.M < medium.cutoff:
        raise ValueError("Basis truncation M={} is below the medium cutoff {}".format(basis.M, medium.cutoff))

    k = np.asarray(k, dtype=float)
    q = k + medium.lattice.reciprocal_vector(basis.indices.astype(float))
    diff = wrap_indices(basis.indices[:, None, :] - basis.indices[None, :, :], basis.alias)
    rows = _medium_lookup(medium, diff)
    present = rows >= 0

    a = np.zeros(rows.shape + (2, 2), dtype=complex)
    v = np.zeros(rows.shape, dtype=complex)
    a[present] = medium.A_coeffs[rows[present]]
    v[present] = medium.V_coeffs[rows[present]]

    mat = np.einsum('ri,rcij,cj->rc', q, a, q) + v
    defect = np.max(np.abs(mat - mat.conj().T)) / max(1.0, np.max(np.abs(mat)))
    logging.debug("Fibre matrix {}x{} at k={}, Hermiticity defect {:.2e}".format(len(basis), len(basis), k, defect))
    return mat


def compute_bands(medium, k, nbands, M, basis=None, res_tol=RES_TOL):
    """
    Lowest nbands eigenpairs of L(k).

    :param medium:      FourierMedium
    :param k:           momentum
    :param nbands:      number of bands
    :param M:           truncation of the default basis (ignored if basis is given)
    :param basis:       optional PlaneWaveBasis whose index set is reused at k
    :param res_tol:     relative residual tolerance of each eigenpair
    :return:            BandResult
    """
    basis = PlaneWaveBasis(medium.lattice, k, M) if basis is None else basis.at_momentum(k)
    if nbands > len(basis):
        raise ValueError("Requested {} bands from a basis of size {}".format(nbands, len(basis)))

    mat = assemble_fiber_matrix(medium, k, basis)
    try:
        vals, vecs = linalg.eigh(mat, subset_by_index=[0, nbands - 1])
    except linalg.LinAlgError as e:
        raise EigensolverError("Eigensolve failed at k={}: {}".format(k, e))

    res = np.linalg.norm(mat.dot(vecs) - vecs * vals, axis=0)
    bad = res > res_tol * (1.0 + np.abs(vals))
    if np.any(bad):
        raise EigensolverError("Eigenpair residuals {} exceed tolerance at k={}".format(res[bad], k))

    return BandResult(k, vals, vecs, basis)


def path_momenta(waypoints, samplesPerLeg):
    """Sampled momenta and arclength along a polyline of waypoints."""
    waypoints = [np.asarray(w, dtype=float) for w in waypoints]
    if len(waypoints) < 2:
        raise ValueError("A band path needs at least two waypoints")

    ks = []
    for start, stop in zip(waypoints[:-1], waypoints[1:]):
        for t in np.arange(samplesPerLeg) / float(samplesPerLeg):
            ks.append(start + t * (stop - start))
    ks.append(waypoints[-1])
    ks = np.array(ks)
    steps = np.r_[0.0, np.sqrt(np.sum(np.diff(ks, axis=0) ** 2, axis=1))]
    return ks, np.cumsum(steps)


def band_path(medium, waypoints, samplesPerLeg, nbands, M, threads=1):
    """
    Band table along a polyline of momenta.

    :param medium:          FourierMedium
    :param waypoints:       list of momenta (>= 2)
    :param samplesPerLeg:   samples per leg, the final waypoint is included once
    :param nbands:          number of bands
    :param M:               truncation
    :param threads:         joblib workers
    :return:                pandas DataFrame with columns s, kx, ky, E1..En
    """
    ks, s = path_momenta(waypoints, samplesPerLeg)
    logging.info("Computing {} bands at {} momenta".format(nbands, len(ks)))

    energies = Parallel(n_jobs=threads, backend="threading")(
        delayed(_eigenvalues)(medium, k, nbands, M) for k in ks)

    table = pd.DataFrame({'s': s, 'kx': ks[:, 0], 'ky': ks[:, 1]})
    energies = np.array(energies)
    for b in range(nbands):
        table['E{}'.format(b + 1)] = energies[:, b]
    return table


def gap_landscape(table, nbands):
    """Minimum over the path of E_{b+1} - E_b for every adjacent pair."""
    return {'E{}-E{}'.format(b + 2, b + 1): float(np.min(table['E{}'.format(b + 2)] - table['E{}'.format(b + 1)]))
            for b in range(nbands - 1)}


def _eigenvalues(medium, k, nbands, M):
    return compute_bands(medium, k, nbands, M).eigenvalues
