"""
Two-scale envelope approximation of the strained models and its validation.

The effective field is

    phi_eff(y, t) = eps carrier(t) [beta1(eps y, eps t) Phi1(y) + beta2(eps y, eps t) Phi2(y)],

with carrier exp(-i E_D t) (Schroedinger) or exp(i sqrt(E_D) t) (wave) and
beta solving the effective Dirac system on the slow torus (the supercell
scaled by eps).

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging
import math
import time

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from hexdirac.dynamics.dirac_operator import DiracOperatorSpec, evolve
from hexdirac.dynamics.grid import PeriodicGrid, SpinorField, Trajectory
from hexdirac.strain.deformation import Deformation, jacobian_U
from hexdirac.strain.gauge import general_coupling
from hexdirac.utils.errors import GridMismatch, SupportOverflow
from hexdirac.utils.general import round_up_to_multiple, seeded_rng
from hexdirac.validation.propagators import (solve_schrodinger, solve_wave, max_eigenvalue, STABILITY_SAFETY,
                                             KRYLOV_TOL, KRYLOV_MAX_DIM)
from hexdirac.validation.strained_operator import StrainedOperator, expansion_residual, sample_field

TAIL_TOL = 1e-8
TIME_TOL = 1e-9

ERROR_RATIO_WINDOW = (1.5, 2.6)
EXPANSION_RATIO_WINDOW = (3.6, 4.4)


def gaussian_envelope(grid, width, amplitudes=(1.0, 0.0), center=(0.0, 0.0)):
    """beta_j(Y) = a_j exp(-|Y - center|^2 / (2 width^2)) on a slow grid."""
    r2 = np.sum((grid.coords - np.asarray(center, dtype=float)) ** 2, axis=-1)
    profile = np.exp(-0.5 * r2 / width ** 2)
    return SpinorField.from_components(grid, amplitudes[0] * profile, amplitudes[1] * profile)


def slow_grid(micro, epsilon, points):
    """Slow torus: the supercell scaled by eps, sampled on points x points."""
    if points % 2 or points > min(micro.shape):
        raise GridMismatch("Envelope grid of {} points does not fit a {} supercell grid".format(points, micro.shape))
    return micro.scaled(epsilon, (points, points))


def _check_slow(beta_grid, micro, epsilon):
    if not np.allclose(beta_grid.cell, epsilon * micro.cell) or not np.allclose(beta_grid.origin,
                                                                                   epsilon * micro.origin):
        raise GridMismatch("Envelope grid is not the supercell scaled by eps = {}".format(epsilon))


def carrier(dpd, flavor, t):
    if flavor == 'wave':
        return np.exp(1j * np.sqrt(dpd.E_D) * t)
    return np.exp(-1j * dpd.E_D * t)


def sample_modes(dpd, micro):
    return sample_field(dpd.Phi1, micro), sample_field(dpd.Phi2, micro)


def _two_scale(beta_data, beta_grid, micro, epsilon, phis):
    b = beta_grid.resample(beta_data, micro.shape)
    return epsilon * (b[0] * phis[0] + b[1] * phis[1])


def build_envelope_initial(dpd, beta0, epsilon, micro, flavor='schroedinger', phis=None):
    """
    Initial data eps [beta10(eps y) Phi1 + beta20(eps y) Phi2] (and i sqrt(E_D) times it for the wave flavour).

    :param dpd:         DiracPointData sampled commensurately with the supercell
    :param beta0:       SpinorField on the slow torus
    :param epsilon:     strain scale
    :param micro:       supercell PeriodicGrid
    :param flavor:      'schroedinger' or 'wave'
    :param phis:        pre-sampled (Phi1, Phi2) on micro
    :return:            (phi0, phit0), phit0 None for the Schroedinger flavour
    """
    _check_slow(beta0.grid, micro, epsilon)
    tail = beta0.grid.edge_ratio(beta0.data)
    if tail > TAIL_TOL:
        raise SupportOverflow("Envelope tail at the supercell boundary is {:.3e} of its maximum".format(tail))
    phis = sample_modes(dpd, micro) if phis is None else phis
    phi0 = _two_scale(beta0.data, beta0.grid, micro, epsilon, phis)
    phit0 = 1j * np.sqrt(dpd.E_D) * phi0 if flavor == 'wave' else None
    return phi0, phit0


def solve_effective_envelope(dpd, strain, beta0, T, dt, stride=1, flavor='schroedinger', method='strang'):
    """
    Evolve the effective Dirac system of a flavour on the slow torus.

    The system is brought into the standard form v (p . sigma) + M by the frame
    matrix of general_coupling, evolved with dirac-dynamics, and mapped back.

    :param strain:      StrainGrid on beta0's grid
    :return:            Trajectory of SpinorFields in the original frame
    """
    strain.grid.check_compatible(beta0.grid)
    v, M, F = general_coupling(strain, dpd, flavor)
    spec = DiracOperatorSpec(beta0.grid, v, None, None, M)
    alpha0 = SpinorField(beta0.grid, np.einsum('ab,b...->a...', F, beta0.data))
    frame_traj = evolve(spec, alpha0, dt, T, stride, method)

    traj = Trajectory(beta0.grid)
    for t, alpha in zip(frame_traj.times, frame_traj.states):
        traj.append(t, SpinorField(beta0.grid, np.einsum('ab,b...->a...', F, alpha.data)))
    traj.diagnostics.update(frame_traj.diagnostics)
    return traj


def envelope_error(full, dpd, envelope, epsilon, flavor='schroedinger', phis=None):
    """
    ||phi(t) - phi_eff(t)||_{L2} at matched snapshot times T = eps t.

    :param full:        Trajectory of the full model (complex arrays on the supercell)
    :param envelope:    Trajectory of the envelope (SpinorFields on the slow torus)
    :return:            dict with times, errors, sup and sup / eps
    """
    if len(full) != len(envelope):
        raise GridMismatch("{} full snapshots against {} envelope snapshots".format(len(full), len(envelope)))
    t_full = np.array(full.times)
    t_env = np.array(envelope.times)
    if np.max(np.abs(t_env - epsilon * t_full)) > TIME_TOL * max(1.0, np.max(np.abs(t_env))):
        raise GridMismatch("Snapshot times do not satisfy T = eps t")

    micro = full.grid
    phis = sample_modes(dpd, micro) if phis is None else phis
    errors = []
    for t, phi, beta in zip(t_full, full.states, envelope.states):
        eff = carrier(dpd, flavor, t) * _two_scale(beta.data, beta.grid, micro, epsilon, phis)
        errors.append(float(micro.norm(phi - eff)))
    errors = np.array(errors)
    sup = float(np.max(errors))
    return {'times': t_full.tolist(), 'errors': errors.tolist(), 'sup': sup,
            'normalized': sup / epsilon if epsilon > 0 else float('nan')}


def supercell_cells(epsilon, cells_c, min_cells, max_cells):
    """N = ceil(c / eps) clipped to [min_cells, max_cells], rounded up to a multiple of 6."""
    n = max(min_cells, int(math.ceil(cells_c / epsilon)))
    return round_up_to_multiple(min(n, max_cells), 6)


def validation_run(medium, dpd, deformation, epsilon, cells, points_per_cell, flavor='schroedinger', rho=2.0,
                   width=0.5, amplitudes=(1.0, 0.0), envelope_points=64, n_snapshots=8, dt=0.02, env_dt=0.01,
                   krylov_tol=KRYLOV_TOL, krylov_max_dim=KRYLOV_MAX_DIM, seed=0):
    """
    One full-versus-effective comparison at a single eps.

    :param dpd:             DiracPointData on the grid-consistent basis of points_per_cell
    :param deformation:     Deformation (an erf kind is periodised on the slow strip)
    :param cells:           supercell size N
    :return:                dict with the error series and run diagnostics
    """
    start = time.perf_counter()
    micro = PeriodicGrid.supercell(medium.lattice, cells, points_per_cell)
    slow = slow_grid(micro, epsilon, envelope_points)
    if not deformation.fits_period(slow.y1_period):
        raise GridMismatch("Linear gauge window r_c + w_c = {} does not fit half the slow period {:.4f} "
                           "at eps = {}".format(deformation.params['r_c'] + deformation.params['w_c'],
                                                0.5 * slow.y1_period, epsilon))
    deformation = deformation.with_period(slow.y1_period)

    strain = jacobian_U(deformation, slow)
    beta0 = gaussian_envelope(slow, width, amplitudes)
    op = StrainedOperator(medium, deformation, epsilon, micro)
    phis = sample_modes(dpd, micro)
    phi0, phit0 = build_envelope_initial(dpd, beta0, epsilon, micro, flavor, phis)

    t_end = rho / epsilon
    t_snap = t_end / n_snapshots
    if flavor == 'wave':
        lam = max_eigenvalue(op, seeded_rng(seed))
        sub = int(math.ceil(t_snap / (STABILITY_SAFETY * 2.0 / np.sqrt(lam))))
        full = solve_wave(op, phi0, phit0, t_end / (n_snapshots * sub), t_end, sub, lam_max=lam)
    else:
        sub = int(math.ceil(t_snap / dt))
        full = solve_schrodinger(op, phi0, t_end / (n_snapshots * sub), t_end, sub, krylov_tol, krylov_max_dim)

    env_sub = int(math.ceil((rho / n_snapshots) / env_dt))
    env = solve_effective_envelope(dpd, strain, beta0, rho, rho / (n_snapshots * env_sub), env_sub, flavor)
    result = envelope_error(full, dpd, env, epsilon, flavor, phis)
    result.update({'epsilon': epsilon, 'cells': cells, 'kind': deformation.kind,
                   'diagnostics': {'full': full.diagnostics, 'envelope': env.diagnostics},
                   'runtime_s': time.perf_counter() - start})
    logging.info("eps={}: N={} cells, sup error {:.6e} (sup/eps {:.4f})".format(
        epsilon, cells, result['sup'], result['normalized']))
    return result


def convergence_study(medium, dpd, deformation, epsilons, points_per_cell, cells_c=7.0, min_cells=12,
                      max_cells=192, control=True, ratio_window=ERROR_RATIO_WINDOW, threads=1, **run_args):
    """
    Envelope error across a descending eps ladder, with an optional U = 0 control row.

    :return:    (pandas DataFrame epsilon, sup_error, normalized, runtime_s, cells, kind;
                 verdict dict with ratios and pass flag; list of raw run results)
    """
    epsilons = [float(e) for e in epsilons]
    if any(a <= b for a, b in zip(epsilons[:-1], epsilons[1:])):
        raise ValueError("The eps ladder must be strictly descending, got {}".format(epsilons))

    jobs = [(deformation, e) for e in epsilons]
    if control:
        jobs.append((Deformation.constant(), epsilons[0]))

    runs = Parallel(n_jobs=threads, backend="threading")(
        delayed(validation_run)(medium, dpd, d, e, supercell_cells(e, cells_c, min_cells, max_cells),
                                points_per_cell, **run_args) for d, e in jobs)

    table = pd.DataFrame({
        'epsilon': [r['epsilon'] for r in runs],
        'sup_error': [r['sup'] for r in runs],
        'normalized': [r['normalized'] for r in runs],
        'runtime_s': [r['runtime_s'] for r in runs],
        'cells': [r['cells'] for r in runs],
        'kind': [r['kind'] for r in runs],
    })

    strained = [r['sup'] for r in runs[:len(epsilons)]]
    ratios = [a / b if b > 0 else float('inf') for a, b in zip(strained[:-1], strained[1:])]
    verdict = {
        'ratios': ratios,
        'ratio_window': list(ratio_window),
        'monotone': all(a > b for a, b in zip(strained[:-1], strained[1:])),
        'pass': bool(ratios) and all(ratio_window[0] <= r <= ratio_window[1] for r in ratios),
    }
    if not ratios:
        verdict['pass'] = None
    return table, verdict, runs


def expansion_study(medium, deformation, epsilons, cells, points_per_cell, width=2.0,
                    ratio_window=EXPANSION_RATIO_WINDOW):
    """
    Second order check of L^eps = L^0 + eps Tr(U frakA) + O(eps^2) on a localised
    Gaussian test field of the given width (micro units).

    :return:    (pandas DataFrame epsilon, residual; verdict dict)
    """
    grid = PeriodicGrid.supercell(medium.lattice, cells, points_per_cell)
    r2 = np.sum(grid.coords ** 2, axis=-1)
    f = np.exp(-0.5 * r2 / width ** 2).astype(complex)
    if grid.edge_ratio(f) > TAIL_TOL:
        raise SupportOverflow("Test field of width {} is not localised in {} cells".format(width, cells))

    residuals = [expansion_residual(StrainedOperator(medium, deformation, e, grid), f) for e in epsilons]
    table = pd.DataFrame({'epsilon': [float(e) for e in epsilons], 'residual': residuals})
    ratios = [a / b if b > 0 else float('inf') for a, b in zip(residuals[:-1], residuals[1:])]
    verdict = {'ratios': ratios, 'ratio_window': list(ratio_window),
               'pass': bool(ratios) and all(ratio_window[0] <= r <= ratio_window[1] for r in ratios)}
    logging.info("Expansion residuals {} (ratios {})".format(
        ['{:.4e}'.format(r) for r in residuals], ['{:.4f}'.format(r) for r in ratios]))
    return table, verdict
