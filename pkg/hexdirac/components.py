"""
Components for use in model configurations.

One method per command; each computes its stage, writes its artifacts with
OutWriter, checks its acceptance gate and returns a result dictionary.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import json
import logging

import numpy as np
import pandas as pd

from hexdirac.bloch.solver import PlaneWaveBasis, band_path, gap_landscape
from hexdirac.data_reader.ini_reader import ValidationException
from hexdirac.data_writer.out_writer import OutWriter
from hexdirac.dirac.cone import rotation_closed, verify_cone
from hexdirac.dirac.dirac_point import extract_dirac_point, locate_dirac_point, origin_search
from hexdirac.dynamics.dirac_operator import DiracOperatorSpec, apply_dirac, dirac_spectrum, evolve
from hexdirac.dynamics.grid import PeriodicGrid
from hexdirac.dynamics.landau import (LandauSpec, erf_zero_mode, fidelity, gauge_operator, landau_energy,
                                      landau_mode, wavepacket_superposition)
from hexdirac.lattice.geometry import build_lattice
from hexdirac.media.honeycomb import FourierMedium, check_symmetries, make_reference_medium
from hexdirac.strain.deformation import Deformation, jacobian_U
from hexdirac.strain.gauge import (erf_gauge_deformation, general_coupling, linear_gauge_deformation,
                                   pseudo_fields)
from hexdirac.utils.errors import AcceptanceFailure, HigherDegeneracy, NoDegeneracyFound, SymmetryMismatch
from hexdirac.validation.envelope import convergence_study, expansion_study, supercell_cells

SYMMETRY_TOL = 1e-10
CONE_SLOPE_TOL = 0.02
CONE_ANISOTROPY_TOL = 1e-6
LANDAU_LEVEL_TOL = 1e-3


class Components:
    """Stages of a hexdirac run, sharing one medium and one writer."""

    def __init__(self, config):

        self.s = config
        self.writer = OutWriter(config)
        self.lattice = build_lattice(config.Medium.scale)
        self.medium = self.load_medium()
        self.summary = {}
        self.warnings = []

    def load_medium(self):
        """Medium from MediumFile (JSON document) or the reference three-cosine medium."""
        if self.s.Medium.MediumFile:
            try:
                with open(self.s.Medium.MediumFile) as f:
                    medium = FourierMedium.from_json(json.load(f), self.lattice)
            except (IOError, ValueError, KeyError, TypeError) as e:
                raise ValidationException("Cannot load medium '{}': {}".format(self.s.Medium.MediumFile, e),
                                          key='MediumFile')
            if self.s.Solver.M < medium.cutoff:
                raise ValidationException("M = {} is below the cutoff {} of the loaded medium".format(
                    self.s.Solver.M, medium.cutoff), key='M')
            logging.info("Loaded medium of cutoff {} from {}".format(medium.cutoff, self.s.Medium.MediumFile))
            return medium
        logging.info("Reference medium with V0 = {}".format(self.s.Medium.V0))
        return make_reference_medium(self.lattice, self.s.Medium.V0)

    def _symmetry_report(self):
        report = check_symmetries(self.medium, max(12, 2 * self.medium.cutoff + 2), SYMMETRY_TOL)
        if not report['pass']:
            raise SymmetryMismatch("Medium violates the honeycomb axioms (max violation {:.3e})".format(
                report['max_violation']))
        return report

    def _dirac_point(self, basis=None, tol=None):
        sv = self.s.Solver
        kwargs = {'degTol': sv.deg_tol, 'structTol': sv.struct_tol, 'velTol': sv.vel_tol, 'symTol': sv.sym_tol}
        if tol is not None:
            kwargs.update({'degTol': tol, 'symTol': tol, 'structTol': max(sv.struct_tol, 100.0 * tol)})
        return extract_dirac_point(self.medium, sv.M, basis=basis, **kwargs)

    def _box(self, section):
        return PeriodicGrid.box(section.L1, section.L2, section.N1, section.N2)

    def warn(self, kind, message):
        """Log a non-fatal condition and keep it for the manifest."""
        logging.warning(message)
        self.warnings.append({'kind': kind, 'message': message})

    def bands(self):
        """Band table along the configured path of high symmetry points."""
        sv = self.s.Solver
        points = self.lattice.high_symmetry_points()
        table = band_path(self.medium, [points[p] for p in sv.waypoints], sv.samples_per_leg, sv.nbands, sv.M,
                          self.s.Threads)
        self.writer.write_csv(table, 'bands.csv')
        self.summary.update({'waypoints': sv.waypoints, 'gaps': gap_landscape(table, sv.nbands)})

        try:
            b_star, e_d, _, _ = locate_dirac_point(self.medium, sv.M, sv.deg_tol)
            self.summary['corner_degeneracy'] = {'bStar': b_star, 'E_D': float(e_d)}
        except (HigherDegeneracy, NoDegeneracyFound) as e:
            self.warn(type(e).__name__, "No Dirac point at K: {}".format(e))
        return {'table': table}

    def dirac_point(self):
        """Dirac point, bifurcation coefficients and cone check."""
        symmetry = self._symmetry_report()
        dpd, report = self._dirac_point()
        cone = verify_cone(self.medium, dpd, self.s.Cone.radii, np.radians(self.s.Cone.directions),
                           self.s.Solver.M, self.s.Threads)
        dpd.coneFitResidual = cone['max_rel_slope_error']

        doc = {'dirac_point': dpd.to_json(), 'bifurcation': report, 'cone': cone, 'symmetry': symmetry}
        if self.s.Solver.origin_search:
            best, candidates = origin_search(self.medium, self.s.Solver.M)
            doc['origin_search'] = {'best': best, 'candidates': candidates}
        self.writer.write_json(doc, 'dirac_point.json')
        self.summary.update({'E_D': dpd.E_D, 'nuF': dpd.nuF, 'mu': [dpd.mu.real, dpd.mu.imag], 'xi': dpd.xi,
                             'cone_slope_error': cone['max_rel_slope_error'],
                             'cone_anisotropy': cone['anisotropy']})

        if cone['max_rel_slope_error'] > CONE_SLOPE_TOL:
            raise AcceptanceFailure("Cone slope deviates from nu_F by {:.3e}".format(cone['max_rel_slope_error']))
        if rotation_closed(self.s.Cone.directions) and cone['anisotropy'] > CONE_ANISOTROPY_TOL:
            raise AcceptanceFailure("Cone slopes differ by {:.3e} across rotated directions".format(cone['anisotropy']))
        return {'dirac_point': dpd, 'report': report, 'cone': cone}

    def landau(self):
        """Fibre spectrum of the gauged Dirac operator against the analytic levels, and mode residuals."""
        d = self.s.Dynamics
        grid = self._box(d)
        spec = gauge_operator(grid, d.v, 'erf' if d.gauge == 'erf' else 'linear', d.B0, d.r_c, d.w_c)
        k = d.spectrum_k

        evals = dirac_spectrum(spec, k)
        rows = []
        if d.gauge == 'erf':
            mode = erf_zero_mode(grid, k)
            residual = apply_dirac(spec, mode).norm() / mode.norm()
            rows.append({'n': 0, 'sign': 0, 'exact': 0.0, 'numeric': float(evals[np.argmin(np.abs(evals))]),
                         'mode_residual': float(residual)})
            self.writer.write_pgm(mode.density(), 'erf_zero_mode.pgm')
        else:
            for n in range(d.n_levels + 1):
                for sign in ((1,) if n == 0 else (1, -1)):
                    level = LandauSpec(n, sign)
                    exact = landau_energy(d.v, d.B0, level)
                    mode = landau_mode(grid, d.B0, k, level, region=d.r_c)
                    residual = (apply_dirac(spec, mode) - exact * mode).norm() / mode.norm()
                    rows.append({'n': n, 'sign': sign, 'exact': exact,
                                 'numeric': float(evals[np.argmin(np.abs(evals - exact))]),
                                 'mode_residual': float(residual)})
                    self.writer.write_pgm(mode.density(), 'landau_mode_n{}_{}.pgm'.format(
                        n, 'p' if sign > 0 else 'm'))
        table = pd.DataFrame(rows, columns=['n', 'sign', 'exact', 'numeric', 'mode_residual'])
        table['error'] = np.abs(table['numeric'] - table['exact'])
        chiral = float(np.max(np.abs(np.sort(evals) + np.sort(evals)[::-1])))

        self.writer.write_csv(table, 'landau_levels.csv')
        self.writer.write_csv(pd.DataFrame({'E': evals}), 'fiber_spectrum.csv')
        self.summary.update({'gauge': d.gauge, 'k': k, 'max_level_error': float(table['error'].max()),
                             'chiral_asymmetry': chiral})

        if table['error'].max() > LANDAU_LEVEL_TOL:
            raise AcceptanceFailure("Landau level error {:.3e} above {}".format(table['error'].max(),
                                                                               LANDAU_LEVEL_TOL))
        return {'table': table, 'spectrum': evals, 'chiral_asymmetry': chiral}

    def _deformation(self, dpd, grid=None):
        st = self.s.Strain
        if st.kind != 'constant' and not dpd.mu_is_real and abs(dpd.mu) > 0:
            # amplitude from |mu|; the general coupling then carries the phase of mu
            scale = dpd.nuF / abs(dpd.mu)
            if st.kind == 'linear-gauge':
                return Deformation.linear_gauge(0.5 * st.B0 * scale, st.r_c, st.w_c)
            return Deformation.erf_gauge(scale, grid.y1_period if grid is not None else None)
        if st.kind == 'linear-gauge':
            return linear_gauge_deformation(dpd, st.B0, st.r_c, st.w_c)
        if st.kind == 'erf-gauge':
            return erf_gauge_deformation(dpd, grid)
        return Deformation.constant()

    def strain_fields(self):
        """Pseudo gauge fields of the configured deformation on a rectangular grid."""
        st = self.s.Strain
        self._symmetry_report()
        dpd, _ = self._dirac_point()
        grid = self._box(st)
        strain = jacobian_U(self._deformation(dpd, grid), grid)

        if dpd.mu_is_real:
            gauge = pseudo_fields(strain, dpd, st.flavor)
            columns = {'A1': gauge.A1, 'A2': gauge.A2, 'W': gauge.W, 'B': gauge.B}
            if gauge.B_exact is not None:
                columns['B_exact'] = gauge.B_exact
            self.summary.update({'v': gauge.v, 'B_error': gauge.B_error,
                                 'B_origin': float(gauge.B[grid.shape[0] // 2, grid.shape[1] // 2])})
        else:
            self.warn('ComplexMu', "mu = {} is complex, writing the general coupling M(Y)".format(dpd.mu))
            v, M, _ = general_coupling(strain, dpd, st.flavor)
            columns = {'re_M{}{}'.format(i + 1, j + 1): M[i, j].real for i in range(2) for j in range(2)}
            columns.update({'im_M{}{}'.format(i + 1, j + 1): M[i, j].imag for i in range(2) for j in range(2)})
            self.summary.update({'v': v})

        self.writer.write_grid_csv(grid, columns, 'strain_fields.csv')
        self.summary.update({'kind': st.kind, 'flavor': st.flavor, 'dirac_point': dpd.to_json()})
        return {'strain': strain, 'columns': columns}

    def simulate(self):
        """Wave packet evolution in a gauge field, with fidelity series and snapshots."""
        d = self.s.Dynamics
        grid = self._box(d)
        if d.gauge == 'free':
            spec = DiracOperatorSpec(grid, d.v)
        else:
            spec = gauge_operator(grid, d.v, d.gauge, d.B0, d.r_c, d.w_c)

        if d.family == 'landau':
            psi0, c, nodes = wavepacket_superposition(grid, 'landau', d.k0, d.w, B0=d.B0, spec=LandauSpec(0),
                                                      region=d.r_c)
        else:
            psi0, c, nodes = wavepacket_superposition(grid, 'erf', d.k0, d.w)

        traj = evolve(spec, psi0, d.dt, d.T, d.stride, d.method)
        fid = fidelity(traj)
        norms = [s.norm() for s in traj.states]

        for i, state in enumerate(traj.states):
            self.writer.write_spinor_csv(state, 'snapshot_{:04d}.csv'.format(i))
            self.writer.write_pgm(state.density(), 'density_{:04d}.pgm'.format(i))
        self.writer.write_csv(pd.DataFrame({'t': traj.times, 'fidelity': fid, 'norm': norms}), 'fidelity.csv')
        self.summary.update({'gauge': d.gauge, 'family': d.family, 'nodes': nodes, 'normalisation': c,
                             'dt': d.dt, 'stride': d.stride, 'final_fidelity': float(fid[-1]),
                             'norm_drift': traj.diagnostics['norm_drift']})

        if d.gauge != 'free' and fid[-1] < d.fidelity_min:
            raise AcceptanceFailure("Fidelity {:.4f} below {}".format(fid[-1], d.fidelity_min))
        return {'trajectory': traj, 'fidelity': fid}

    def _check_window(self):
        """Refuse a linear gauge window that reaches past half of any slow torus of the eps ladder."""
        va, st = self.s.Validation, self.s.Strain
        if st.kind != 'linear-gauge':
            return
        for eps in va.epsilons:
            cells = supercell_cells(eps, va.cells_c, va.min_cells, va.max_cells)
            half = 0.5 * eps * PeriodicGrid.supercell(self.lattice, cells, 2).y1_period
            if st.r_c + st.w_c >= half:
                raise ValidationException(
                    "r_c + w_c = {} reaches past half the slow period {:.4f} at eps = {} ({} cells)".format(
                        st.r_c + st.w_c, half, eps, cells), key='r_c')

    def validate(self):
        """Envelope error against the full strained model across the eps ladder."""
        va = self.s.Validation
        self._check_window()
        self._symmetry_report()
        basis = PlaneWaveBasis.grid_box(self.lattice, self.lattice.K, va.points_per_cell)
        dpd, _ = self._dirac_point(basis=basis, tol=va.dirac_tol)
        deformation = self._deformation(dpd)

        table, verdict, runs = convergence_study(
            self.medium, dpd, deformation, va.epsilons, va.points_per_cell, cells_c=va.cells_c,
            min_cells=va.min_cells, max_cells=va.max_cells, control=va.control, ratio_window=va.ratio_window,
            threads=self.s.Threads, flavor=va.flavor, rho=va.rho, width=va.envelope_width,
            amplitudes=va.amplitudes, envelope_points=va.envelope_points, n_snapshots=va.n_snapshots, dt=va.dt,
            env_dt=va.env_dt, krylov_tol=va.krylov_tol, krylov_max_dim=va.krylov_max_dim, seed=self.s.Seed)

        self.writer.write_csv(table, 'validation.csv')
        series = [{k: r[k] for k in ('epsilon', 'cells', 'kind', 'times', 'errors', 'sup', 'normalized',
                                     'diagnostics')} for r in runs]
        self.writer.write_json({'verdict': verdict, 'runs': series, 'flavor': va.flavor}, 'validation.json')
        self.summary.update({'verdict': verdict, 'flavor': va.flavor})

        gate = verdict['monotone'] if va.flavor == 'wave' else verdict['pass']
        if gate is False:
            raise AcceptanceFailure("Envelope error ratios {} outside {}".format(verdict['ratios'],
                                                                                 verdict['ratio_window']))
        return {'table': table, 'verdict': verdict}

    def expansion_check(self):
        """Second order remainder of the operator expansion on the configured deformation kind."""
        va = self.s.Validation
        st = self.s.Strain
        if st.kind == 'linear-gauge':
            deformation = Deformation.linear_gauge(0.5 * st.B0, st.r_c, st.w_c)
        elif st.kind == 'erf-gauge':
            deformation = Deformation.erf_gauge(1.0)
        else:
            deformation = Deformation.constant()

        table, verdict = expansion_study(self.medium, deformation, va.expansion_epsilons, va.expansion_cells,
                                         va.points_per_cell, va.expansion_width, va.expansion_window)
        self.writer.write_csv(table, 'expansion.csv')
        self.summary.update({'verdict': verdict, 'kind': st.kind})

        if st.kind != 'constant' and not verdict['pass']:
            raise AcceptanceFailure("Expansion residual ratios {} outside {}".format(verdict['ratios'],
                                                                                     verdict['ratio_window']))
        return {'table': table, 'verdict': verdict}

    def finish(self):
        """Write the closing manifest."""
        self.writer.write_manifest(dict(self.summary, warnings=self.warnings))
