#!/usr/bin/env python
"""
Test the plane-wave Bloch solver.
"""

import unittest

import numpy as np

from hexdirac.bloch.solver import PlaneWaveBasis, assemble_fiber_matrix, compute_bands, band_path, gap_landscape
from hexdirac.bloch.symmetry import apply_rotation_R, rotation_permutation, wrap_indices
from hexdirac.lattice.geometry import build_lattice
from hexdirac.media.fields import QuasiPeriodicField
from hexdirac.media.honeycomb import make_reference_medium, free_medium


class TestBloch(unittest.TestCase):

    def setUp(self):
        self.lat = build_lattice()
        self.medium = make_reference_medium(self.lat, 10.0)

    def testHermitian(self):
        k = np.array([0.4, -1.3])
        basis = PlaneWaveBasis(self.lat, k, 4)
        mat = assemble_fiber_matrix(self.medium, k, basis)
        np.testing.assert_allclose(mat, mat.conj().T, atol=1e-12)

    def testFreeCorner(self):
        """The free fibre at K starts with the triple |K|^2 = (4 pi / 3)^2."""
        bands = compute_bands(free_medium(self.lat), self.lat.K, 4, 3)
        np.testing.assert_allclose(bands.eigenvalues[:3], (4 * np.pi / 3) ** 2, rtol=1e-12)
        self.assertGreater(bands.eigenvalues[3], bands.eigenvalues[2] + 1.0)

    def testRotationClosedBasis(self):
        basis = PlaneWaveBasis(self.lat, self.lat.K, 5)
        f = basis.field(np.ones(len(basis)))
        image = apply_rotation_R(f)
        self.assertEqual(set(map(tuple, image.indices.tolist())), set(map(tuple, basis.indices.tolist())))

    def testRotationInvariantSpectrum(self):
        k = np.array([0.7, 0.2])
        a = compute_bands(self.medium, k, 5, 6).eigenvalues
        b = compute_bands(self.medium, self.lat.R.dot(k), 5, 6).eigenvalues
        np.testing.assert_allclose(a, b, rtol=1e-9)

    def testGridBox(self):
        basis = PlaneWaveBasis.grid_box(self.lat, self.lat.K, 8)
        self.assertEqual(len(basis), 64)
        self.assertEqual(len(set(map(tuple, basis.indices.tolist()))), 64)
        np.testing.assert_array_equal(wrap_indices(basis.indices, 8), basis.indices)
        np.testing.assert_array_equal(wrap_indices(basis.indices + np.array([8, -8]), 8), basis.indices)
        with self.assertRaises(ValueError):
            PlaneWaveBasis.grid_box(self.lat, self.lat.K, 7)

    def testEigenvectorsNormalized(self):
        bands = compute_bands(self.medium, self.lat.K, 3, 4)
        for vec in bands.eigenvectors:
            self.assertAlmostEqual(vec.norm(), 1.0, places=10)
        self.assertIsInstance(bands.eigenvectors[0], QuasiPeriodicField)

    def testBandPath(self):
        pts = self.lat.high_symmetry_points()
        table = band_path(self.medium, [pts['G'], pts['K'], pts['M']], 3, 4, 3, threads=2)
        self.assertEqual(list(table.columns), ['s', 'kx', 'ky', 'E1', 'E2', 'E3', 'E4'])
        self.assertEqual(len(table), 7)
        self.assertTrue(np.all(np.diff(table['s']) > 0))
        gaps = gap_landscape(table, 4)
        self.assertEqual(sorted(gaps), ['E2-E1', 'E3-E2', 'E4-E3'])
        self.assertTrue(all(g >= -1e-10 for g in gaps.values()))

    def testTruncationBelowCutoff(self):
        with self.assertRaises(ValueError):
            assemble_fiber_matrix(self.medium, self.lat.K, PlaneWaveBasis(self.lat, self.lat.K, 0))

    def testRotationCommutesWithFiberMatrix(self):
        basis = PlaneWaveBasis(self.lat, self.lat.K, 5)
        mat = assemble_fiber_matrix(self.medium, self.lat.K, basis)
        position = {tuple(m): i for i, m in enumerate(basis.indices.tolist())}
        image = rotation_permutation(self.lat, self.lat.K, basis.indices)
        perm = np.array([position[tuple(m)] for m in image.tolist()])
        self.assertEqual(sorted(perm.tolist()), list(range(len(basis))))
        np.testing.assert_allclose(mat[np.ix_(perm, perm)], mat, atol=1e-10 * np.max(np.abs(mat)))

    def testEigenvaluesDecreaseWithTruncation(self):
        """Disk bases are nested, so each eigenvalue is non-increasing in M."""
        previous = None
        for M in range(2, 7):
            vals = compute_bands(self.medium, self.lat.K, 6, M).eigenvalues
            if previous is not None:
                self.assertTrue(np.all(vals <= previous + 1e-9 * (1.0 + np.abs(previous))))
            previous = vals

    def testRayleighQuotient(self):
        k = np.array([0.4, -1.3])
        bands = compute_bands(self.medium, k, 4, 5)
        mat = assemble_fiber_matrix(self.medium, k, bands.basis.at_momentum(k))
        for b, lam in enumerate(bands.eigenvalues):
            v = bands.vectors[:, b]
            self.assertAlmostEqual(np.vdot(v, v).real, 1.0, places=10)
            self.assertLess(abs(np.vdot(v, mat.dot(v)) - lam), 1e-9 * (1.0 + abs(lam)))
            self.assertLess(np.linalg.norm(mat.dot(v) - lam * v), 1e-8 * (1.0 + abs(lam)))


if __name__ == '__main__':
    unittest.main()
