#!/usr/bin/env python
"""
Test the honeycomb lattice conventions.
"""

import unittest

import numpy as np

from hexdirac.lattice.geometry import build_lattice, reduce_to_bz, rotation_image_index
from hexdirac.utils.errors import ConventionError


class TestLattice(unittest.TestCase):

    def setUp(self):
        self.lat = build_lattice(1.0)

    def testDuality(self):
        """v_i . k_j = 2 pi delta_ij and the two cell areas multiply to (2 pi)^2."""
        gram = self.lat.direct_matrix.T.dot(self.lat.dual_matrix)
        np.testing.assert_allclose(gram, 2 * np.pi * np.eye(2), atol=1e-12)
        self.assertAlmostEqual(self.lat.cellArea * self.lat.bzArea, (2 * np.pi) ** 2, places=10)

    def testRotation(self):
        R = self.lat.R
        np.testing.assert_allclose(R.dot(R).dot(R), np.eye(2), atol=1e-14)
        np.testing.assert_allclose(self.lat.v2, self.lat.Rinv.dot(self.lat.v1), atol=1e-14)
        np.testing.assert_allclose(self.lat.v2, [-np.sqrt(3) / 2, 0.5], atol=1e-14)

    def testDualAngle(self):
        k1, k2 = self.lat.k1, self.lat.k2
        cos = k1.dot(k2) / (np.linalg.norm(k1) * np.linalg.norm(k2))
        self.assertAlmostEqual(cos, 0.5, places=12)

    def testCornerIsRotationInvariant(self):
        """R K - K is a reciprocal lattice vector, here -k2."""
        diff = self.lat.R.dot(self.lat.K) - self.lat.K
        np.testing.assert_allclose(diff, -self.lat.k2, atol=1e-12)
        np.testing.assert_array_equal(self.lat.rot_shift, [0, -1])
        self.assertAlmostEqual(np.linalg.norm(self.lat.K), 4 * np.pi / 3, places=12)

    def testRotationImageIndex(self):
        rng = np.random.default_rng(3)
        m = rng.integers(-5, 6, size=(50, 2))
        image, deviation = rotation_image_index(self.lat, m)
        self.assertLess(deviation, 1e-10)
        q = self.lat.K + self.lat.reciprocal_vector(m)
        np.testing.assert_allclose(q.dot(self.lat.R.T), self.lat.K + self.lat.reciprocal_vector(image), atol=1e-10)

        # the K triple is permuted among itself
        triple = np.array([[0, 0], [0, -1], [-1, 0]])
        image, _ = rotation_image_index(self.lat, triple)
        self.assertEqual(sorted(map(tuple, image.tolist())), sorted(map(tuple, triple.tolist())))

    def testReduceToBz(self):
        k = self.lat.K + 2 * self.lat.k1 - self.lat.k2
        reduced = reduce_to_bz(self.lat, k)
        self.assertAlmostEqual(np.linalg.norm(reduced), np.linalg.norm(self.lat.K), places=10)
        np.testing.assert_allclose(reduce_to_bz(self.lat, np.array([0.1, -0.2])), [0.1, -0.2], atol=1e-14)

        # equal-distance translates resolve deterministically
        np.testing.assert_allclose(reduce_to_bz(self.lat, self.lat.K), reduce_to_bz(self.lat, self.lat.K))

    def testC3Centres(self):
        for y0 in self.lat.c3_centres():
            shift = self.lat.R.dot(y0) - y0
            coords = np.linalg.solve(self.lat.direct_matrix, shift)
            np.testing.assert_allclose(coords, np.rint(coords), atol=1e-12)

    def testScaleAndImmutability(self):
        lat = build_lattice(2.0)
        np.testing.assert_allclose(lat.k1, self.lat.k1 / 2.0, atol=1e-14)
        with self.assertRaises(ValueError):
            lat.K[0] = 1.0
        with self.assertRaises(ValueError):
            build_lattice(0.0)

    def testConventionErrorIsNumericalFailure(self):
        from hexdirac.utils.errors import NumericalFailure
        self.assertTrue(issubclass(ConventionError, NumericalFailure))


if __name__ == '__main__':
    unittest.main()
