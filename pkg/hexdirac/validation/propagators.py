"""
Time integrators of the full strained models.

    Schroedinger   i d_t phi = L^eps phi      Krylov (Arnoldi) exponential
    wave           d_tt phi + L^eps phi = 0   Stoermer-Verlet leapfrog

Both are matrix free on top of apply_Leps.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

import numpy as np
from scipy.linalg import expm

from hexdirac.dynamics.grid import Trajectory
from hexdirac.utils.errors import InstabilityError, KrylovConvergenceError
from hexdirac.validation.strained_operator import apply_Leps

KRYLOV_TOL = 1e-9
KRYLOV_MAX_DIM = 60

POWER_ITERATIONS = 200
POWER_TOL = 1e-6

# leapfrog runs at this fraction of the stability limit 2 / sqrt(lambda_max)
STABILITY_SAFETY = 0.5
ENERGY_GROWTH = 0.1


def krylov_step(matvec, v, dt, tol=KRYLOV_TOL, m_max=KRYLOV_MAX_DIM):
    """
    exp(-i dt L) v by Arnoldi projection onto the Krylov space of L.

    The subspace grows until h_{m+1,m} |e_m^T exp(-i dt H_m) e_1| ||v|| < tol ||v||.

    :param matvec:  f -> L f on flattened arrays of the grid shape
    :param v:       initial field
    :param dt:      step
    :return:        (result, subspace dimension, error estimate); estimate None if not converged
    """
    beta = np.sqrt(np.real(np.vdot(v, v)))
    if beta == 0:
        return np.zeros_like(v), 0, 0.0

    basis = [v / beta]
    H = np.zeros((m_max + 1, m_max), dtype=complex)
    estimate = np.inf
    for m in range(1, m_max + 1):
        w = matvec(basis[m - 1])
        for j in range(m):
            H[j, m - 1] = np.vdot(basis[j], w)
            w = w - H[j, m - 1] * basis[j]
        # one reorthogonalisation pass
        for j in range(m):
            c = np.vdot(basis[j], w)
            H[j, m - 1] += c
            w = w - c * basis[j]
        h_next = np.sqrt(np.real(np.vdot(w, w)))
        H[m, m - 1] = h_next

        small = expm(-1j * dt * H[:m, :m])[:, 0]
        estimate = dt * h_next * abs(small[-1]) * beta
        if h_next < 1e-14 * beta or estimate < tol * beta:
            out = np.zeros_like(v)
            for j in range(m):
                out = out + small[j] * basis[j]
            return beta * out, m, estimate
        basis.append(w / h_next)

    return None, m_max, estimate


def solve_schrodinger(op, phi0, dt, T, stride=1, tol=KRYLOV_TOL, m_max=KRYLOV_MAX_DIM):
    """
    Advance i d_t phi = L^eps phi with Krylov exponential steps.

    :param op:      StrainedOperator
    :param phi0:    initial field on op.grid
    :param dt:      step, adjusted so that a whole number of steps reaches T
    :param T:       final time
    :param stride:  store every stride-th step
    :raises KrylovConvergenceError: with the index of the failing step
    :return:        Trajectory of complex arrays
    """
    if T < 0 or not dt > 0:
        raise ValueError("Need dt > 0 and T >= 0")
    nsteps = int(round(T / dt)) if T > 0 else 0
    if nsteps > 0:
        dt = T / nsteps

    def matvec(f):
        return apply_Leps(op, f)

    traj = Trajectory(op.grid)
    traj.append(0.0, phi0.copy())
    phi = phi0.copy()
    dims = []
    for step in range(1, nsteps + 1):
        phi_next, m, estimate = krylov_step(matvec, phi, dt, tol, m_max)
        if phi_next is None:
            raise KrylovConvergenceError(step, estimate)
        phi = phi_next
        dims.append(m)
        if step % stride == 0 or step == nsteps:
            traj.append(step * dt, phi.copy())

    flat = np.array([op.grid.norm(s) for s in traj.states])
    weighted = np.array([op.weighted_norm(s) for s in traj.states])
    traj.diagnostics.update({
        'dt': dt,
        'steps': nsteps,
        'krylov_max_dim': int(max(dims)) if dims else 0,
        'norm_drift': float(np.max(np.abs(flat - flat[0]))),
        'weighted_norm_drift': float(np.max(np.abs(weighted - weighted[0]))),
    })
    logging.debug("Schroedinger run: {} steps of {:.4e}, Krylov dimension <= {}, norm drift {:.3e}".format(
        nsteps, dt, traj.diagnostics['krylov_max_dim'], traj.diagnostics['norm_drift']))
    return traj


def max_eigenvalue(op, rng=None, iterations=POWER_ITERATIONS, tol=POWER_TOL):
    """Largest eigenvalue of L^eps by power iteration in the weighted inner product."""
    rng = np.random.default_rng(0) if rng is None else rng
    f = rng.standard_normal(op.grid.shape) + 1j * rng.standard_normal(op.grid.shape)
    f = f / op.weighted_norm(f)
    lam = 0.0
    for it in range(iterations):
        g = apply_Leps(op, f)
        new = float(np.real(op.weighted_inner(f, g)))
        f = g / op.weighted_norm(g)
        if it > 0 and abs(new - lam) < tol * abs(new):
            lam = new
            break
        lam = new
    logging.debug("Power iteration: lambda_max ~ {:.6e} after {} iterations".format(lam, it + 1))
    return lam


def wave_energy(op, phi, velocity):
    """||phi_t||_w^2 + <phi, L^eps phi>_w."""
    return float(np.real(op.weighted_inner(velocity, velocity) + op.weighted_inner(phi, apply_Leps(op, phi))))


def stable_step(op, lam_max=None, safety=STABILITY_SAFETY):
    lam_max = max_eigenvalue(op) if lam_max is None else lam_max
    return safety * 2.0 / np.sqrt(lam_max), lam_max


def solve_wave(op, phi0, phit0, dt, T, stride=1, lam_max=None):
    """
    Leapfrog for d_tt phi + L^eps phi = 0.

    :param op:      StrainedOperator
    :param phi0:    initial displacement
    :param phit0:   initial velocity
    :param dt:      step, None for half the stability limit
    :param T:       final time
    :param stride:  store every stride-th step
    :param lam_max: largest eigenvalue of L^eps if already known
    :raises InstabilityError:   dt beyond the stability limit, or energy growth above 10 percent
    :return:        Trajectory of complex arrays
    """
    lam_max = max_eigenvalue(op) if lam_max is None else lam_max
    limit = 2.0 / np.sqrt(lam_max)
    if dt is None:
        dt = STABILITY_SAFETY * limit
    if dt >= limit:
        raise InstabilityError("Leapfrog step {:.4e} exceeds the stability limit {:.4e}".format(dt, limit))
    if op.potential_free:
        logging.warning("Wave run with V0=0")

    nsteps = int(np.ceil(T / dt - 1e-12)) if T > 0 else 0
    if nsteps > 0:
        dt = T / nsteps

    traj = Trajectory(op.grid)
    traj.append(0.0, phi0.copy())

    # Taylor start: phi^1 = phi^0 + dt phi_t - dt^2/2 L phi^0
    prev = phi0.copy()
    cur = phi0 + dt * phit0 - 0.5 * dt ** 2 * apply_Leps(op, phi0)
    e0 = wave_energy(op, phi0, phit0)
    energies = [e0]
    if nsteps >= 1 and (stride == 1 or nsteps == 1):
        traj.append(dt, cur.copy())

    for step in range(2, nsteps + 1):
        nxt = 2.0 * cur - prev - dt ** 2 * apply_Leps(op, cur)
        # energy at the middle level with a centred velocity
        energy = wave_energy(op, cur, (nxt - prev) / (2.0 * dt))
        energies.append(energy)
        if abs(energy - e0) > ENERGY_GROWTH * abs(e0):
            raise InstabilityError("Wave energy changed from {:.6e} to {:.6e} at step {}".format(e0, energy, step))
        prev, cur = cur, nxt
        if step % stride == 0 or step == nsteps:
            traj.append(step * dt, cur.copy())

    energies = np.array(energies)
    traj.diagnostics.update({
        'dt': dt,
        'steps': nsteps,
        'lambda_max': lam_max,
        'stability_limit': limit,
        'energy_drift': float(np.max(np.abs(energies - e0)) / max(abs(e0), 1e-300)),
        'potential_free': op.potential_free,
    })
    logging.debug("Wave run: {} steps of {:.4e}, relative energy drift {:.3e}".format(
        nsteps, dt, traj.diagnostics['energy_drift']))
    return traj
