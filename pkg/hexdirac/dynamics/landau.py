"""
Analytic states of the effective Dirac operator in a Landau gauge A = (0, B0 Y1)
and in the erf gauge A = (0, erf(Y1)), plus wave packets built from them.

Modes are e^{i k Y2} times a Y1 profile and are normalised on the periodic box.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging
import math

import numpy as np
from scipy import special

from hexdirac.dynamics.dirac_operator import DiracOperatorSpec
from hexdirac.dynamics.grid import SpinorField
from hexdirac.strain.deformation import Deformation, erf_profile, jacobian_U
from hexdirac.utils.errors import BoxTooSmall, GridMismatch
from hexdirac.utils.math import trace_components

TAIL_TOL = 1e-12

# Gaussian weights are cut where they drop below exp(-16)
NODE_WIDTHS = 4.0

# erf modes decay like exp(-(1 - |k|) |Y1|), nodes stay below this momentum
ERF_KMAX = 0.8

# largest admissible |a_k| on the box boundary relative to its peak
ERF_EDGE_TOL = 1e-6


class LandauSpec:
    """Landau level index n >= 0 and branch sign (ignored for n = 0)."""

    def __init__(self, n, sign=1):
        if n < 0 or int(n) != n:
            raise ValueError("Landau index must be a non-negative integer, got {}".format(n))
        if sign not in (1, -1):
            raise ValueError("Branch sign must be +1 or -1")
        self.n = int(n)
        self.sign = int(sign)


def landau_energy(v, B0, spec):
    """E = sign v sqrt(2 n |B0|)."""
    return spec.sign * v * np.sqrt(2.0 * spec.n * abs(B0)) if spec.n > 0 else 0.0


def gauge_operator(grid, v, gauge, B0=1.0, r_c=None, w_c=1.0):
    """
    Operator with A2 = B0 Y1 chi(Y1) (gauge 'linear') or A2 = erf(Y1) (gauge 'erf').

    The potential is produced through the strain machinery with unit coupling
    mu / nu_F = 1, so that A2 = Tr(U sigma1) = U21.
    """
    if gauge == 'linear':
        if r_c is None:
            r_c = 0.5 * grid.y1_period - w_c
        deformation = Deformation.linear_gauge(0.5 * B0, r_c, w_c)
    elif gauge == 'erf':
        deformation = Deformation.erf_gauge(1.0, grid.y1_period)
    else:
        raise ValueError("Unknown gauge '{}'".format(gauge))
    T1 = np.real(trace_components(jacobian_U(deformation, grid).U)[1])
    return DiracOperatorSpec(grid, v, None, T1)


def _check_commensurate(grid, k):
    L2 = grid.y2_period
    if L2 is None:
        raise GridMismatch("Landau states need a grid whose second period is along Y2")
    j = k * L2 / (2.0 * np.pi)
    if abs(j - round(j)) > 1e-9:
        raise ValueError("Momentum k = {} is not commensurate with the box period {}".format(k, L2))


def _hermite_function(n, xi):
    c = 1.0 / (np.pi ** 0.25 * np.sqrt(2.0 ** n * math.factorial(n)))
    return c * special.eval_hermite(n, xi) * np.exp(-0.5 * xi ** 2)


def landau_mode(grid, B0, k, spec, region=None):
    """
    Landau mode Psi_{n,k} of D = v (p - A) . sigma with A = (0, B0 Y1).

    B0 > 0:  Psi_0 = (psi_0, 0),  Psi_{n,+-} = (i psi_n, +- psi_{n-1}) / sqrt(2)
    B0 < 0:  Psi_0 = (0, psi_0),  Psi_{n,+-} = (+- psi_{n-1}, i psi_n) / sqrt(2)

    with psi_n the Hermite functions of xi = sqrt(|B0|) (Y1 - k / B0).

    :param grid:        rectangular PeriodicGrid
    :param B0:          field strength (non-zero)
    :param k:           Y2 momentum, commensurate with the box
    :param spec:        LandauSpec
    :param region:      half width where the gauge is linear (default: half the box)
    :return:            SpinorField normalised on the box
    """
    if B0 == 0:
        raise ValueError("Landau modes need B0 != 0")
    _check_commensurate(grid, k)
    region = 0.5 * grid.y1_period if region is None else region

    b = abs(B0)
    centre = k / B0
    xi = np.sqrt(b) * (grid.Y1 - centre)
    edge = np.sqrt(b) * (np.array([-region, region]) - centre)

    tail = 0.0
    for m in {spec.n, max(spec.n - 1, 0)}:
        peak = np.max(np.abs(_hermite_function(m, xi)))
        tail = max(tail, float(np.max(np.abs(_hermite_function(m, edge)))) / peak)
    if tail > TAIL_TOL:
        raise BoxTooSmall("Landau mode n={} at k={} has relative tail {:.3e} at |Y1| = {}".format(
            spec.n, k, tail, region))

    plane = np.exp(1j * k * grid.Y2)
    upper = np.zeros(grid.shape, dtype=complex)
    lower = np.zeros(grid.shape, dtype=complex)
    if spec.n == 0:
        if B0 > 0:
            upper = _hermite_function(0, xi) * plane
        else:
            lower = _hermite_function(0, xi) * plane
    else:
        psi_n = 1j * _hermite_function(spec.n, xi) * plane / np.sqrt(2.0)
        psi_m = spec.sign * _hermite_function(spec.n - 1, xi) * plane / np.sqrt(2.0)
        upper, lower = (psi_n, psi_m) if B0 > 0 else (psi_m, psi_n)

    return SpinorField.from_components(grid, upper, lower).normalized()


def erf_zero_mode(grid, k, periodic=True):
    """
    Zero mode (a_k(Y1) e^{i k Y2}, 0) of the erf gauge operator,
    a_k = exp(int_0^Y1 (k - A2)), normalisable for |k| < 1.
    """
    if abs(k) >= 1:
        raise ValueError("erf zero modes exist only for |k| < 1, got {}".format(k))
    _check_commensurate(grid, k)
    period = grid.y1_period if periodic else None
    _, _, anti = erf_profile(grid.Y1, period)
    exponent = k * grid.Y1 - anti
    amp = np.exp(exponent - np.max(exponent))
    if grid.edge_ratio(amp) > ERF_EDGE_TOL:
        raise BoxTooSmall("erf zero mode at k={} does not decay inside the box".format(k))
    upper = amp * np.exp(1j * k * grid.Y2)
    return SpinorField.from_components(grid, upper, np.zeros(grid.shape, dtype=complex)).normalized()


def erf_kmax(grid):
    """Largest |k| whose erf zero mode decays to ERF_EDGE_TOL inside the box."""
    decay = (1.0 - np.log(ERF_EDGE_TOL)) / (0.5 * grid.y1_period)
    return min(ERF_KMAX, 1.0 - decay)


def admissible_nodes(grid, k0, w, kmax=None):
    """Box commensurate momenta 2 pi j / L2 within NODE_WIDTHS widths of k0."""
    L2 = grid.y2_period
    step = 2.0 * np.pi / L2
    lo = int(np.ceil((k0 - NODE_WIDTHS * w) / step))
    hi = int(np.floor((k0 + NODE_WIDTHS * w) / step))
    nodes = step * np.arange(lo, hi + 1)
    if kmax is not None:
        nodes = nodes[np.abs(nodes) <= kmax]
    return nodes


def wavepacket_superposition(grid, family, k0, w, nodes=None, **kwargs):
    """
    Gaussian superposition int G(k) Psi_k dk of a mode family, G(k) = exp(-(k - k0)^2 / w^2).

    The integral is a sum over box commensurate nodes (all momenta of a
    periodic box are multiples of 2 pi / L2).

    :param grid:        rectangular PeriodicGrid
    :param family:      'landau' (kwargs B0, spec, region) or 'erf'
    :param k0:          central momentum
    :param w:           momentum width
    :param nodes:       explicit momenta, default admissible_nodes
    :return:            (normalised SpinorField, normalisation constant c, nodes)
    """
    if family == 'landau':
        def mode(k):
            return landau_mode(grid, kwargs['B0'], k, kwargs.get('spec', LandauSpec(0)), kwargs.get('region'))
        kmax = None
    elif family == 'erf':
        def mode(k):
            return erf_zero_mode(grid, k)
        kmax = erf_kmax(grid)
    else:
        raise ValueError("Unknown mode family '{}'".format(family))

    if nodes is None:
        nodes = admissible_nodes(grid, k0, w, kmax)
    if len(nodes) == 0:
        raise GridMismatch("No box commensurate momenta within the packet width")

    step = 2.0 * np.pi / grid.y2_period
    total = SpinorField(grid, np.zeros((2,) + grid.shape, dtype=complex))
    for k in nodes:
        weight = np.exp(-(k - k0) ** 2 / w ** 2) * step
        total = total + weight * mode(k)
    c = 1.0 / total.norm()
    logging.debug("Wave packet from {} nodes, normalisation constant {:.6e}".format(len(nodes), c))
    return c * total, c, np.asarray(nodes)


def fidelity(trajectory):
    """|<psi(0), psi(t)>| / ||psi(0)||^2 for every stored snapshot."""
    psi0 = trajectory.states[0]
    n0 = psi0.norm() ** 2
    return np.array([abs(psi0.inner(s)) / n0 for s in trajectory.states])
