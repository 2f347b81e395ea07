#!/usr/bin/env python
"""
Test the strained continuum operator, its propagators and the envelope
comparison machinery.
"""

import unittest

import numpy as np

from hexdirac.bloch.solver import PlaneWaveBasis, compute_bands
from hexdirac.dirac.dirac_point import DiracPointData, extract_dirac_point
from hexdirac.dynamics.grid import PeriodicGrid, SpinorField, Trajectory
from hexdirac.dynamics.landau import LandauSpec, landau_mode
from hexdirac.lattice.geometry import build_lattice
from hexdirac.media.honeycomb import make_reference_medium
from hexdirac.strain.deformation import Deformation, jacobian_U
from hexdirac.strain.gauge import general_coupling, linear_gauge_deformation
from hexdirac.utils.errors import AliasingError, GridMismatch, InstabilityError, SupportOverflow
from hexdirac.validation.envelope import (build_envelope_initial, convergence_study, envelope_error,
                                          expansion_study, gaussian_envelope, slow_grid, solve_effective_envelope,
                                          supercell_cells, validation_run)
from hexdirac.validation.propagators import max_eigenvalue, solve_schrodinger, solve_wave
from hexdirac.validation.strained_operator import (StrainedOperator, apply_L0_grid, apply_Leps,
                                                   expansion_residual, sample_field)

POINTS = 12


class TestStrainedOperator(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.lat = build_lattice()
        cls.medium = make_reference_medium(cls.lat, 10.0)
        cls.grid = PeriodicGrid.supercell(cls.lat, 6, POINTS)
        cls.basis = PlaneWaveBasis.grid_box(cls.lat, cls.lat.K, POINTS)
        cls.bands = compute_bands(cls.medium, cls.lat.K, 3, POINTS // 2, basis=cls.basis)

    def testSampleField(self):
        field = self.bands.eigenvectors[0]
        values = sample_field(field, self.grid)
        pts = self.grid.coords[::7, ::5]
        np.testing.assert_allclose(values[::7, ::5], field.evaluate(pts), atol=1e-10)

    def testSampleFieldGuards(self):
        coarse = PeriodicGrid.supercell(self.lat, 6, 4)
        with self.assertRaises(AliasingError):
            sample_field(self.bands.eigenvectors[0], coarse)
        odd = PeriodicGrid.supercell(self.lat, 4, POINTS)
        with self.assertRaises(GridMismatch):
            sample_field(self.bands.eigenvectors[0], odd)

    def testGridEigenfunction(self):
        """Eigenvectors of the grid-consistent fibre are exact eigenfunctions of the collocated operator."""
        op = StrainedOperator(self.medium, Deformation.constant(), 0.0, self.grid)
        for b in range(3):
            f = sample_field(self.bands.eigenvectors[b], self.grid)
            r = apply_Leps(op, f) - self.bands.eigenvalues[b] * f
            self.assertLess(self.grid.norm(r) / self.grid.norm(f), 1e-8)

    def testUnstrainedLimit(self):
        op = StrainedOperator(self.medium, Deformation.linear_gauge(0.5, 8.0, 4.0), 0.0, self.grid)
        rng = np.random.default_rng(2)
        f = rng.standard_normal(self.grid.shape) + 1j * rng.standard_normal(self.grid.shape)
        np.testing.assert_allclose(apply_Leps(op, f), apply_L0_grid(op, f), atol=1e-9)
        np.testing.assert_allclose(op.detJ, 1.0)

    def testWeightedSelfAdjoint(self):
        op = StrainedOperator(self.medium, Deformation.linear_gauge(0.5, 8.0, 4.0), 0.2, self.grid)
        rng = np.random.default_rng(5)
        f = rng.standard_normal(self.grid.shape) + 1j * rng.standard_normal(self.grid.shape)
        g = rng.standard_normal(self.grid.shape) + 1j * rng.standard_normal(self.grid.shape)
        a = op.weighted_inner(f, apply_Leps(op, g))
        b = np.conj(op.weighted_inner(g, apply_Leps(op, f)))
        self.assertLess(abs(a - b) / abs(a), 1e-10)

    def testExpansionResidual(self):
        op = StrainedOperator(self.medium, Deformation.constant(), 0.1, self.grid)
        r2 = np.sum(self.grid.coords ** 2, axis=-1)
        f = np.exp(-0.5 * r2).astype(complex)
        self.assertLess(expansion_residual(op, f), 1e-10)

    def testExpansionOrder(self):
        table, verdict = expansion_study(self.medium, Deformation.linear_gauge(0.5, 8.0, 4.0), [0.1, 0.05], 30, 8)
        self.assertEqual(list(table.columns), ['epsilon', 'residual'])
        self.assertTrue(verdict['pass'], verdict)
        self.assertTrue(3.6 <= verdict['ratios'][0] <= 4.4)

    def testInvalidScale(self):
        with self.assertRaises(ValueError):
            StrainedOperator(self.medium, Deformation.constant(), 1.0, self.grid)


class TestPropagators(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.lat = build_lattice()
        cls.medium = make_reference_medium(cls.lat, 10.0)
        cls.grid = PeriodicGrid.supercell(cls.lat, 6, POINTS)
        basis = PlaneWaveBasis.grid_box(cls.lat, cls.lat.K, POINTS)
        bands = compute_bands(cls.medium, cls.lat.K, 1, POINTS // 2, basis=basis)
        cls.E = bands.eigenvalues[0]
        cls.op = StrainedOperator(cls.medium, Deformation.constant(), 0.0, cls.grid)
        cls.phi0 = sample_field(bands.eigenvectors[0], cls.grid)

    def testSchroedingerEigenstate(self):
        traj = solve_schrodinger(self.op, self.phi0, 0.1, 1.0, stride=5)
        self.assertEqual(len(traj), 3)
        err = self.grid.norm(traj.final - np.exp(-1j * self.E) * self.phi0) / self.grid.norm(self.phi0)
        self.assertLess(err, 1e-7)
        self.assertLess(traj.diagnostics['norm_drift'], 1e-8)

    def testWaveCarrier(self):
        lam = max_eigenvalue(self.op, np.random.default_rng(0))
        self.assertGreater(lam, self.E)
        omega = np.sqrt(self.E)
        traj = solve_wave(self.op, self.phi0, 1j * omega * self.phi0, 0.002, 1.0, stride=250, lam_max=lam)
        err = self.grid.norm(traj.final - np.exp(1j * omega) * self.phi0) / self.grid.norm(self.phi0)
        self.assertLess(err, 1e-4)
        self.assertLess(traj.diagnostics['energy_drift'], 1e-3)

    def testWaveStepGuard(self):
        with self.assertRaises(InstabilityError):
            solve_wave(self.op, self.phi0, 0 * self.phi0, 1.0, 1.0, lam_max=100.0)


class TestEnvelope(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.lat = build_lattice()
        cls.medium = make_reference_medium(cls.lat, 10.0)
        cls.micro = PeriodicGrid.supercell(cls.lat, 6, POINTS)
        cls.dpd, _ = extract_dirac_point(cls.medium, POINTS // 2, degTol=1e-6, symTol=1e-6, structTol=1e-4,
                                         basis=PlaneWaveBasis.grid_box(cls.lat, cls.lat.K, POINTS))

    def testSupportOverflow(self):
        slow = slow_grid(self.micro, 0.1, 16)
        beta0 = gaussian_envelope(slow, 1.0)
        with self.assertRaises(SupportOverflow):
            build_envelope_initial(self.dpd, beta0, 0.1, self.micro)

    def testSlowGridGuards(self):
        with self.assertRaises(GridMismatch):
            slow_grid(self.micro, 0.1, 15)
        beta0 = gaussian_envelope(slow_grid(self.micro, 0.2, 16), 0.05)
        with self.assertRaises(GridMismatch):
            build_envelope_initial(self.dpd, beta0, 0.1, self.micro)

    def testInitialErrorVanishes(self):
        eps = 0.25
        slow = slow_grid(self.micro, eps, 16)
        beta0 = gaussian_envelope(slow, 0.08, (1.0, 0.5j))
        phi0, phit0 = build_envelope_initial(self.dpd, beta0, eps, self.micro, 'wave')
        np.testing.assert_allclose(phit0, 1j * np.sqrt(self.dpd.E_D) * phi0)

        full = Trajectory(self.micro)
        full.append(0.0, phi0)
        env = Trajectory(slow)
        env.append(0.0, beta0)
        result = envelope_error(full, self.dpd, env, eps)
        self.assertLess(result['sup'], 1e-12)
        self.assertAlmostEqual(result['normalized'], result['sup'] / eps)

        full.append(1.0, phi0)
        env.append(0.5, beta0)
        with self.assertRaises(GridMismatch):
            envelope_error(full, self.dpd, env, eps)

    def testFreeEnvelopeFlavors(self):
        """Without strain a plane wave envelope is a cone eigenstate in both flavours."""
        dpd = DiracPointData(self.lat.K, 4.0, 1, None, None, 1.3, 0.4, -0.5, 0.0)
        slow = slow_grid(self.micro, 0.2, 16)
        k = 2 * np.pi * np.array([1.0, -2.0]).dot(np.linalg.inv(slow.cell))
        theta = np.arctan2(k[1], k[0])
        plane = np.exp(1j * slow.coords.dot(k))
        beta0 = SpinorField.from_components(slow, plane, np.exp(-1j * theta) * plane)
        strain = jacobian_U(Deformation.constant(), slow)

        E = dpd.nuF * np.linalg.norm(k)
        for flavor, factor in (('schroedinger', 1.0), ('wave', -1.0 / (2.0 * np.sqrt(dpd.E_D)))):
            traj = solve_effective_envelope(dpd, strain, beta0, 0.5, 0.05, flavor=flavor)
            expected = np.exp(-1j * factor * E * 0.5) * beta0.data
            np.testing.assert_allclose(traj.final.data, expected, atol=1e-10)

    def testLandauZeroModeEnvelope(self):
        """Under a linear gauge the lowest Landau mode is a stationary envelope in both flavours."""
        dpd = DiracPointData(self.lat.K, 4.0, 1, None, None, 1.3, 0.7, -0.5, 0.0)
        grid = PeriodicGrid.box(32.0, 8.0, 128, 8)
        strain = jacobian_U(linear_gauge_deformation(dpd, 1.0, 11.0, 4.0), grid)
        alpha = landau_mode(grid, 1.0, 2 * np.pi / 8.0, LandauSpec(0), region=11.0)
        for flavor in ('schroedinger', 'wave'):
            F = general_coupling(strain, dpd, flavor)[2]
            beta0 = SpinorField(grid, np.einsum('ab,b...->a...', F, alpha.data))
            self.assertEqual(np.max(np.abs(beta0.a1)), 0.0)
            traj = solve_effective_envelope(dpd, strain, beta0, 2.0, 0.01, stride=100, flavor=flavor, method='rk4')
            self.assertEqual(len(traj), 3)
            self.assertLess((traj.final - beta0).norm(), 1e-4, flavor)

    def testWindowWiderThanSlowTorus(self):
        with self.assertRaises(GridMismatch):
            validation_run(self.medium, self.dpd, Deformation.linear_gauge(0.5, 8.0, 2.0), 0.25, 6, POINTS,
                           width=0.08, envelope_points=16)

    def testSupercellCells(self):
        self.assertEqual(supercell_cells(0.1, 7.0, 12, 192), 72)
        self.assertEqual(supercell_cells(0.9, 7.0, 12, 192), 12)
        self.assertEqual(supercell_cells(0.01, 7.0, 12, 192), 192)
        self.assertEqual(supercell_cells(0.3, 2.0, 4, 192), 12)

    def testConvergenceStudySmoke(self):
        deformation = Deformation.linear_gauge(0.1, 0.3, 0.3)
        table, verdict, runs = convergence_study(
            self.medium, self.dpd, deformation, [0.25], POINTS, cells_c=1.5, min_cells=6, max_cells=6,
            control=True, threads=2, rho=0.25, width=0.08, envelope_points=16, n_snapshots=2, dt=0.02,
            env_dt=0.01)
        self.assertEqual(list(table.columns), ['epsilon', 'sup_error', 'normalized', 'runtime_s', 'cells', 'kind'])
        self.assertEqual(list(table['kind']), ['linear-gauge', 'constant'])
        self.assertEqual(list(table['cells']), [6, 6])
        self.assertIsNone(verdict['pass'])
        self.assertEqual(verdict['ratios'], [])
        for run in runs:
            self.assertEqual(len(run['errors']), 3)
            self.assertLess(run['errors'][0], 1e-14)
            self.assertTrue(np.all(np.isfinite(run['errors'])))
        with self.assertRaises(ValueError):
            convergence_study(self.medium, self.dpd, deformation, [0.1, 0.2], POINTS)


class TestConvergence(unittest.TestCase):
    """Envelope error under eps halving on small supercells."""

    @classmethod
    def setUpClass(cls):
        cls.lat = build_lattice()
        cls.medium = make_reference_medium(cls.lat, 10.0)
        cls.dpd, _ = extract_dirac_point(cls.medium, 4, degTol=1e-4, symTol=1e-4, structTol=1e-2,
                                         basis=PlaneWaveBasis.grid_box(cls.lat, cls.lat.K, 8))

    def testErrorHalvesWithEps(self):
        table, verdict, runs = convergence_study(
            self.medium, self.dpd, Deformation.linear_gauge(0.2, 0.6, 0.6), [0.2, 0.1], 8, cells_c=3.6,
            min_cells=6, max_cells=48, control=False, ratio_window=(1.2, 3.0), threads=2, rho=0.1, width=0.25,
            envelope_points=32, n_snapshots=3, dt=0.02, env_dt=0.005)
        self.assertEqual(list(table['cells']), [18, 36])
        self.assertEqual(list(table['kind']), ['linear-gauge', 'linear-gauge'])
        self.assertEqual(len(verdict['ratios']), 1)
        self.assertAlmostEqual(verdict['ratios'][0], table['sup_error'][0] / table['sup_error'][1], places=12)
        self.assertTrue(verdict['monotone'], verdict)
        self.assertTrue(verdict['pass'], verdict)
        for run in runs:
            self.assertLess(run['errors'][0], 1e-12)
            self.assertLess(run['sup'], 2.0)


if __name__ == '__main__':
    unittest.main()
