#!/usr/bin/env python
"""
Test the Fourier media and the plane-wave operators built on them.
"""

import unittest

import numpy as np

from hexdirac.bloch.solver import PlaneWaveBasis, assemble_fiber_matrix
from hexdirac.bloch.symmetry import apply_PC, apply_rotation_R
from hexdirac.lattice.geometry import build_lattice
from hexdirac.media.fields import QuasiPeriodicField
from hexdirac.media.honeycomb import (REFERENCE_STAR, FourierMedium, make_reference_medium, free_medium,
                                      check_symmetries, apply_L0, apply_calA, apply_frakA, matrix_trace_frakA)
from hexdirac.utils.errors import EllipticityError


class TestMedia(unittest.TestCase):

    def setUp(self):
        self.lat = build_lattice()
        self.medium = make_reference_medium(self.lat, 10.0)

    def testReferenceSymmetries(self):
        report = check_symmetries(self.medium, 12, 1e-10)
        self.assertTrue(report['pass'])
        self.assertLess(report['max_violation'], 1e-10)
        self.assertAlmostEqual(report['ellipticity'], 1.0, places=12)

    def testBrokenRotation(self):
        # a single cosine keeps inversion but not the threefold rotation
        medium = FourierMedium(self.lat, {(0, 0): np.eye(2)}, {(1, 0): 1.0, (-1, 0): 1.0})
        report = check_symmetries(medium, 12, 1e-10)
        self.assertFalse(report['pass'])
        self.assertGreater(report['rotation_V'], 0.1)
        self.assertLess(report['P_V'], 1e-12)

    def testEllipticity(self):
        with self.assertRaises(EllipticityError):
            FourierMedium(self.lat, {(0, 0): -np.eye(2)}, {})

    def testJsonRoundTrip(self):
        doc = self.medium.to_json()
        other = FourierMedium.from_json(doc)
        np.testing.assert_array_equal(other.indices, self.medium.indices)
        np.testing.assert_allclose(other.V_coeffs, self.medium.V_coeffs)
        np.testing.assert_allclose(other.A_coeffs, self.medium.A_coeffs)
        self.assertEqual(other.lattice.scale, self.lat.scale)

    def testSamples(self):
        y = np.array([[0.3, -0.7], [1.1, 0.25]])
        expected = 10.0 * sum(np.cos(y.dot(g)) for g in (self.lat.k1, self.lat.k2, self.lat.k1 - self.lat.k2))
        np.testing.assert_allclose(self.medium.V_at(y), expected, atol=1e-12)
        np.testing.assert_allclose(self.medium.translate(y[1]).V_at(y[0]), self.medium.V_at(y[0] + y[1]), atol=1e-12)

    def testPlaneWaveOperators(self):
        free = free_medium(self.lat)
        f = QuasiPeriodicField(self.lat, self.lat.K, [(1, -2)], [2.0 - 1.0j])
        q = f.wavevectors[0]

        l0 = apply_L0(free, f)
        np.testing.assert_allclose(l0.restricted_to([(1, -2)]), np.dot(q, q) * f.coeffs, atol=1e-12)

        ca = apply_calA(free, f)
        for i in range(2):
            np.testing.assert_allclose(ca[i].restricted_to([(1, -2)]), 2 * q[i] * f.coeffs, atol=1e-12)

        fa = apply_frakA(free, f)
        for i in range(2):
            for j in range(2):
                np.testing.assert_allclose(fa[i][j].restricted_to([(1, -2)]), -2 * q[i] * q[j] * f.coeffs,
                                           atol=1e-12)

        m = np.array([[0.5, 2.0], [-1.0, 0.25]])
        tr = matrix_trace_frakA(free, f, m)
        expected = -2 * q.dot(m.T).dot(q) * f.coeffs
        np.testing.assert_allclose(tr.restricted_to([(1, -2)]), expected, atol=1e-12)

    def testL0MatchesFiberMatrix(self):
        rng = np.random.default_rng(7)
        basis = PlaneWaveBasis(self.lat, self.lat.K, 3)
        vec = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        mat = assemble_fiber_matrix(self.medium, self.lat.K, basis)
        out = basis.vector(apply_L0(self.medium, basis.field(vec)))
        np.testing.assert_allclose(out, mat.dot(vec), atol=1e-10)

    def testFieldAlgebra(self):
        rng = np.random.default_rng(1)
        f = QuasiPeriodicField.random(self.lat, self.lat.K, 2, rng)
        g = QuasiPeriodicField.random(self.lat, self.lat.K, 1, rng)
        self.assertAlmostEqual((f - f).norm(), 0.0, places=12)
        self.assertAlmostEqual(f.inner(f).real, f.norm() ** 2, places=10)
        self.assertAlmostEqual(f.inner(g), np.conj(g.inner(f)), places=10)
        with self.assertRaises(ValueError):
            f + QuasiPeriodicField.random(self.lat, np.zeros(2), 1, rng)

    def modulated_medium(self):
        """Reference potential with a rotation invariant isotropic modulation of A."""
        ahat = {(0, 0): np.eye(2)}
        for m1, m2 in REFERENCE_STAR:
            ahat[(m1, m2)] = 0.1 * np.eye(2)
            ahat[(-m1, -m2)] = 0.1 * np.eye(2)
        return FourierMedium(self.lat, ahat, self.medium.Vhat)

    def testModulatedMediumSymmetries(self):
        report = check_symmetries(self.modulated_medium(), 12, 1e-10)
        self.assertTrue(report['pass'])
        self.assertGreater(report['ellipticity'], 0.7 - 1e-12)
        self.assertLess(report['ellipticity'], 1.0)

    def testL0SelfAdjoint(self):
        rng = np.random.default_rng(11)
        for medium in (self.medium, self.modulated_medium()):
            for _ in range(3):
                f = QuasiPeriodicField.random(self.lat, self.lat.K, 3, rng)
                g = QuasiPeriodicField.random(self.lat, self.lat.K, 3, rng)
                lhs = g.inner(apply_L0(medium, f))
                rhs = np.conj(f.inner(apply_L0(medium, g)))
                self.assertLess(abs(lhs - rhs), 1e-10 * max(1.0, abs(lhs)))

    def testTraceFrakASelfAdjoint(self):
        rng = np.random.default_rng(12)
        m = np.array([[0.5, 2.0], [-1.0, 0.25]])
        for medium in (free_medium(self.lat), self.modulated_medium()):
            f = QuasiPeriodicField.random(self.lat, self.lat.K, 2, rng)
            g = QuasiPeriodicField.random(self.lat, self.lat.K, 2, rng)
            lhs = g.inner(matrix_trace_frakA(medium, f, m))
            rhs = np.conj(f.inner(matrix_trace_frakA(medium, g, m)))
            self.assertLess(abs(lhs - rhs), 1e-10 * max(1.0, abs(lhs)))

    def testFrakACommutesWithPC(self):
        rng = np.random.default_rng(13)
        medium = self.modulated_medium()
        f = QuasiPeriodicField.random(self.lat, self.lat.K, 2, rng)
        direct = apply_frakA(medium, apply_PC(f))
        for i in range(2):
            for j in range(2):
                image = apply_PC(apply_frakA(medium, f)[i][j])
                self.assertLess((image - direct[i][j]).norm(), 1e-10 * max(1.0, image.norm()))

    def testFrakARotationCovariant(self):
        """R[frakA f] = R^{-1} (frakA R[f]) R entrywise."""
        rng = np.random.default_rng(14)
        R, Rinv = self.lat.R, self.lat.Rinv
        for medium in (self.medium, self.modulated_medium()):
            f = QuasiPeriodicField.random(self.lat, self.lat.K, 2, rng)
            rotated = apply_frakA(medium, apply_rotation_R(f))
            lhs = apply_frakA(medium, f)
            for a in range(2):
                for b in range(2):
                    terms = [Rinv[a, i] * R[j, b] * rotated[i][j] for i in range(2) for j in range(2)]
                    rhs = terms[0] + terms[1] + terms[2] + terms[3]
                    image = apply_rotation_R(lhs[a][b])
                    self.assertLess((image - rhs).norm(), 1e-10 * max(1.0, image.norm()))


if __name__ == '__main__':
    unittest.main()
