#!/usr/bin/env python
"""
Test Landau levels, erf zero modes and wave packet stationarity.
"""

import unittest

import numpy as np

from hexdirac.dynamics.dirac_operator import DiracOperatorSpec, apply_dirac, dirac_spectrum, evolve
from hexdirac.dynamics.grid import PeriodicGrid
from hexdirac.dynamics.landau import (LandauSpec, admissible_nodes, erf_zero_mode, fidelity, gauge_operator,
                                      landau_energy, landau_mode, wavepacket_superposition)
from hexdirac.utils.errors import BoxTooSmall, FiberTooLarge, GridMismatch


class TestLandauLevels(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.grid = PeriodicGrid.box(32.0, 8.0, 256, 4)
        cls.spec = gauge_operator(cls.grid, 1.0, 'linear', B0=1.0, r_c=11.0, w_c=4.0)
        cls.evals = dirac_spectrum(cls.spec, 0.0)

    def testLevels(self):
        for n in range(1, 5):
            for sign in (1, -1):
                exact = landau_energy(1.0, 1.0, LandauSpec(n, sign))
                self.assertAlmostEqual(exact, sign * np.sqrt(2.0 * n), places=14)
                self.assertLess(np.min(np.abs(self.evals - exact)), 1e-3)
        self.assertLess(np.min(np.abs(self.evals)), 1e-6)

    def testChiralSymmetry(self):
        ev = np.sort(self.evals)
        self.assertLess(np.max(np.abs(ev + ev[::-1])), 1e-8)
        self.assertEqual(len(ev), 2 * 257)

    def testNearestWindow(self):
        near = dirac_spectrum(self.spec, 0.0, count=3, center=np.sqrt(2.0))
        self.assertEqual(len(near), 3)
        self.assertLess(np.min(np.abs(near - np.sqrt(2.0))), 1e-3)

    def testGuards(self):
        with self.assertRaises(FiberTooLarge):
            dirac_spectrum(self.spec, 0.0, max_fiber=100)
        grid = PeriodicGrid.box(8.0, 8.0, 16, 16)
        A2 = np.sin(2 * np.pi * grid.Y2 / 8.0)
        with self.assertRaises(GridMismatch):
            dirac_spectrum(DiracOperatorSpec(grid, 1.0, None, A2), 0.0)


class TestModes(unittest.TestCase):

    def setUp(self):
        self.grid = PeriodicGrid.box(32.0, 16.0, 128, 32)
        self.spec = gauge_operator(self.grid, 1.0, 'linear', B0=1.0, r_c=11.0, w_c=4.0)

    def testModeResiduals(self):
        for k in (0.0, 2 * np.pi / 16.0):
            for n in range(4):
                for sign in ((1,) if n == 0 else (1, -1)):
                    level = LandauSpec(n, sign)
                    psi = landau_mode(self.grid, 1.0, k, level, region=11.0)
                    E = landau_energy(1.0, 1.0, level)
                    residual = (apply_dirac(self.spec, psi) - E * psi).norm()
                    self.assertLess(residual, 1e-6, (k, n, sign))
                    self.assertAlmostEqual(psi.norm(), 1.0, places=12)

    def testNegativeField(self):
        spec = gauge_operator(self.grid, 1.0, 'linear', B0=-1.0, r_c=11.0, w_c=4.0)
        for n, sign in ((0, 1), (1, 1), (2, -1)):
            level = LandauSpec(n, sign)
            psi = landau_mode(self.grid, -1.0, 0.0, level, region=11.0)
            E = landau_energy(1.0, -1.0, level)
            self.assertLess((apply_dirac(spec, psi) - E * psi).norm(), 1e-6)
        self.assertEqual(np.max(np.abs(landau_mode(self.grid, -1.0, 0.0, LandauSpec(0)).a1)), 0.0)

    def testBoxTooSmall(self):
        grid = PeriodicGrid.box(8.0, 8.0, 32, 8)
        with self.assertRaises(BoxTooSmall):
            landau_mode(grid, 1.0, 0.0, LandauSpec(0))

    def testIncommensurateMomentum(self):
        with self.assertRaises(ValueError):
            landau_mode(self.grid, 1.0, 0.3, LandauSpec(0))
        with self.assertRaises(ValueError):
            LandauSpec(-1)

    def testErfZeroMode(self):
        grid = PeriodicGrid.box(64.0, 32.0, 512, 8)
        spec = gauge_operator(grid, 1.0, 'erf')
        for k in (0.0, 2 * np.pi / 32.0):
            psi = erf_zero_mode(grid, k)
            self.assertLess(apply_dirac(spec, psi).norm(), 1e-6)
            self.assertEqual(np.max(np.abs(psi.a2)), 0.0)
        evals = dirac_spectrum(spec, 0.0)
        self.assertLess(np.min(np.abs(evals)), 1e-6)
        with self.assertRaises(ValueError):
            erf_zero_mode(grid, 1.0)


class TestWavePackets(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.grid = PeriodicGrid.box(32.0, 32.0, 128, 128)
        cls.psi0, cls.c, cls.nodes = wavepacket_superposition(cls.grid, 'landau', 0.0, 0.3, B0=1.0, region=11.0)

    def testNodes(self):
        step = 2 * np.pi / 32.0
        np.testing.assert_allclose(self.nodes / step, np.rint(self.nodes / step), atol=1e-12)
        np.testing.assert_allclose(self.nodes, admissible_nodes(self.grid, 0.0, 0.3))
        self.assertAlmostEqual(self.psi0.norm(), 1.0, places=12)
        self.assertGreater(self.c, 0.0)

    def testStationaryInGauge(self):
        spec = gauge_operator(self.grid, 1.0, 'linear', B0=1.0, r_c=11.0, w_c=4.0)
        traj = evolve(spec, self.psi0, 0.02, 2.0, stride=25)
        fid = fidelity(traj)
        self.assertAlmostEqual(fid[0], 1.0, places=12)
        self.assertGreater(np.min(fid), 0.99)

    def testDispersesWithoutGauge(self):
        traj = evolve(DiracOperatorSpec(self.grid, 1.0), self.psi0, 0.02, 4.0, stride=50)
        self.assertLess(fidelity(traj)[-1], 0.9)

    def testStationaryToFinalTime(self):
        spec = gauge_operator(self.grid, 1.0, 'linear', B0=1.0, r_c=11.0, w_c=4.0)
        traj = evolve(spec, self.psi0, 0.02, 4.0, stride=50)
        self.assertAlmostEqual(traj.times[-1], 4.0, places=12)
        self.assertGreater(np.min(fidelity(traj)), 0.99)

    def testErfPacketStationary(self):
        grid = PeriodicGrid.box(64.0, 32.0, 512, 64)
        psi0, c, nodes = wavepacket_superposition(grid, 'erf', 0.0, 0.3)
        self.assertTrue(np.all(np.abs(nodes) < 1.0))
        self.assertEqual(np.max(np.abs(psi0.a2)), 0.0)
        spec = gauge_operator(grid, 1.0, 'erf')
        self.assertLess(apply_dirac(spec, psi0).norm(), 1e-5)
        traj = evolve(spec, psi0, 0.02, 2.0, stride=25)
        self.assertGreater(np.min(fidelity(traj)), 0.99)

    def testUnknownFamily(self):
        with self.assertRaises(ValueError):
            wavepacket_superposition(self.grid, 'bessel', 0.0, 0.3)


if __name__ == '__main__':
    unittest.main()
