"""
Dirac point at the zone corner K and the coefficients of the effective
envelope model.

Pipeline: locate the isolated double eigenvalue E_D, pick the rotation
adapted pair Phi1 (R Phi1 = tau Phi1), Phi2 = PC[Phi1], fix the global phase
so that nu_F > 0, then read off

    nu_F   = 1/2 conj(<Phi1, calA Phi2>) . (1, i)
    mu     = 1/4 <Phi1, frakA Phi2> : (sigma3 + i sigma1)
    xi     = 1/2 Tr <Phi1, frakA Phi1>
    xi#    = sigma2 coefficient of <Phi1, frakA Phi1>

The data at K' follow by complex conjugation (Phi_j(K') = conj(Phi_j(K)))
and are not computed separately.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

import numpy as np

from hexdirac.bloch.solver import PlaneWaveBasis, compute_bands
from hexdirac.bloch.symmetry import apply_rotation_R, apply_PC
from hexdirac.media.fields import QuasiPeriodicField
from hexdirac.media.honeycomb import apply_calA, apply_frakA
from hexdirac.utils.errors import (NoDegeneracyFound, HigherDegeneracy, SymmetryMismatch, DegenerateVelocity,
                                   StructureViolation, NumericalFailure)
from hexdirac.utils.general import complex_pair
from hexdirac.utils.math import PauliBasis, SIGMA0, SIGMA1, SIGMA2, SIGMA3

DEG_TOL = 1e-8
STRUCT_TOL = 1e-6
VEL_TOL = 1e-8
SYM_TOL = 1e-8

# bands computed when scanning for the lowest double eigenvalue
SCAN_BANDS = 12


class DiracPointData:
    """Complete coefficient set of the effective Dirac model at K."""

    def __init__(self, K, E_D, bStar, Phi1, Phi2, nuF, mu, xi, xiSharp, coneFitResidual=float('nan'), M=None,
                 alias=None):
        self.K = np.array(K, dtype=float)
        self.E_D = float(E_D)
        self.bStar = int(bStar)
        self.Phi1 = Phi1
        self.Phi2 = Phi2
        self.nuF = float(nuF)
        self.mu = complex(mu)
        self.xi = float(xi)
        self.xiSharp = complex(xiSharp)
        self.coneFitResidual = float(coneFitResidual)
        self.M = M
        self.alias = alias

    @property
    def mu_is_real(self):
        return abs(self.mu.imag) <= 1e-8 * max(1.0, abs(self.mu))

    def to_json(self):
        return {
            'K': self.K.tolist(),
            'E_D': self.E_D,
            'bStar': self.bStar,
            'nuF': self.nuF,
            'mu': complex_pair(self.mu),
            'xi': self.xi,
            'xiSharp': complex_pair(self.xiSharp),
            'coneFitResidual': self.coneFitResidual,
            'M': self.M,
            'alias': self.alias,
            'Phi1': _field_json(self.Phi1),
            'Phi2': _field_json(self.Phi2),
        }

    @classmethod
    def from_json(cls, doc, lattice):
        return cls(doc['K'], doc['E_D'], doc['bStar'], _field_from_json(doc['Phi1'], lattice, doc['K']),
                   _field_from_json(doc['Phi2'], lattice, doc['K']), doc['nuF'], complex(*doc['mu']), doc['xi'],
                   complex(*doc['xiSharp']), doc.get('coneFitResidual', float('nan')), doc.get('M'),
                   doc.get('alias'))


def _field_json(field):
    return [[int(m[0]), int(m[1]), float(c.real), float(c.imag)] for m, c in zip(field.indices, field.coeffs)]


def _field_from_json(rows, lattice, k):
    rows = np.array(rows, dtype=float).reshape(-1, 4)
    return QuasiPeriodicField(lattice, k, rows[:, :2].astype(int), rows[:, 2] + 1j * rows[:, 3])


def _clusters(values, tol):
    """Group ascending eigenvalues whose neighbours lie within tol (1 + |E|)."""
    groups = [[0]]
    for b in range(1, len(values)):
        if abs(values[b] - values[b - 1]) < tol * (1.0 + abs(values[b - 1])):
            groups[-1].append(b)
        else:
            groups.append([b])
    return groups


def locate_dirac_point(medium, M, degTol=DEG_TOL, basis=None):
    """
    Lowest isolated double eigenvalue of L(K).

    :param medium:      FourierMedium passing the symmetry check
    :param M:           truncation of the default basis
    :param degTol:      relative degeneracy tolerance
    :param basis:       optional PlaneWaveBasis (e.g. the grid-consistent box)
    :return:            (bStar (1-based lower band), E_D, [e1, e2] orthonormal eigenspace, BandResult)
    """
    K = medium.lattice.K
    size = len(basis) if basis is not None else len(PlaneWaveBasis(medium.lattice, K, M))
    nb = min(SCAN_BANDS, size)
    bands = compute_bands(medium, K, nb, M, basis=basis)

    groups = _clusters(bands.eigenvalues, degTol)
    for group in groups:
        if group[-1] == nb - 1 and nb < size:
            break
        if len(group) >= 3:
            raise HigherDegeneracy("{} eigenvalues collapse at E={:.10f} (bands {}..{})".format(
                len(group), bands.eigenvalues[group[0]], group[0] + 1, group[-1] + 1))
        if len(group) == 2:
            b = group[0]
            e_d = 0.5 * (bands.eigenvalues[b] + bands.eigenvalues[b + 1])
            logging.info("Dirac point: bands {} and {} at E_D={:.12f}".format(b + 1, b + 2, e_d))
            return b + 1, e_d, [bands.eigenvectors[b], bands.eigenvectors[b + 1]], bands

    raise NoDegeneracyFound("No isolated double eigenvalue among the lowest {} bands at K".format(nb))


def symmetry_adapted_basis(eigenspace, alias=None, tol=SYM_TOL):
    """
    Rotation eigenvector Phi1 (eigenvalue tau) and Phi2 = PC[Phi1].

    :param eigenspace:  two orthonormal QuasiPeriodicFields at a rotation invariant momentum
    :param alias:       period of a grid-consistent basis
    :param tol:         tolerance on invariance and on the restricted eigenvalues
    :return:            (Phi1, Phi2)
    """
    lat = eigenspace[0].lattice
    tau = lat.tau
    rotated = [apply_rotation_R(e, alias) for e in eigenspace]
    rmat = np.array([[ea.inner(rb) for rb in rotated] for ea in eigenspace])

    leak = max((rotated[b] - (rmat[0, b] * eigenspace[0] + rmat[1, b] * eigenspace[1])).norm() for b in range(2))
    if leak > tol:
        raise SymmetryMismatch("Eigenspace is not rotation invariant (leak {:.3e})".format(leak))

    vals, vecs = np.linalg.eig(rmat)
    order = np.argsort(np.abs(vals - tau))
    lam1, lam2 = vals[order[0]], vals[order[1]]
    if abs(lam1 - tau) > tol or abs(lam2 - np.conj(tau)) > tol:
        raise SymmetryMismatch("Restricted rotation has eigenvalues {} instead of tau, conj(tau)".format(vals))

    w = vecs[:, order[0]]
    phi1 = w[0] * eigenspace[0] + w[1] * eigenspace[1]
    phi1 = (1.0 / phi1.norm()) * phi1
    phi2 = apply_PC(phi1)

    check2 = (apply_rotation_R(phi2, alias) - np.conj(tau) * phi2).norm()
    overlap = abs(phi1.inner(phi2))
    if check2 > tol or overlap > tol:
        raise SymmetryMismatch("PC[Phi1] fails the rotation check ({:.3e}) or overlaps Phi1 ({:.3e})".format(
            check2, overlap))
    return phi1, phi2


def bifurcation_products(phi1, phi2, medium):
    """
    The eight inner products <Phi_i, calA Phi_j> (2-vectors) and <Phi_i, frakA Phi_j> (2x2).

    :return:    dict with keys calA_ij and frakA_ij, i, j in {1, 2}
    """
    phis = {1: phi1, 2: phi2}
    out = {}
    for j, phj in phis.items():
        ca = apply_calA(medium, phj)
        fa = apply_frakA(medium, phj)
        for i, phi in phis.items():
            out['calA_{}{}'.format(i, j)] = np.array([phi.inner(c) for c in ca])
            out['frakA_{}{}'.format(i, j)] = np.array([[phi.inner(fa[a][b]) for b in range(2)] for a in range(2)])
    return out


def apply_gauge(phi1, phi2, theta):
    """Phase rotation (Phi1, Phi2) -> (e^{i theta} Phi1, e^{-i theta} Phi2), which keeps Phi2 = PC[Phi1]."""
    phase = np.exp(1j * theta)
    return phase * phi1, np.conj(phase) * phi2


def fix_phase(phi1, phi2, medium, velTol=VEL_TOL):
    """
    Rotate Phi1 -> e^{i theta} Phi1 (Phi2 -> e^{-i theta} Phi2) so that nu_F is real and positive.

    :return:    (Phi1', Phi2', nu_F)
    """
    w = np.array([phi1.inner(c) for c in apply_calA(medium, phi2)])
    raw = 0.5 * np.dot(np.conj(w), np.array([1.0, 1j]))
    if 2.0 * abs(raw) < velTol:
        raise DegenerateVelocity("|<Phi1, calA Phi2>.(1, i)| = {:.3e} below {:.1e}".format(2 * abs(raw), velTol))

    theta = -0.5 * np.angle(raw)
    logging.debug("Phase fix theta={:.6f}, nu_F={:.12f}".format(theta, abs(raw)))
    phi1, phi2 = apply_gauge(phi1, phi2, theta)
    return phi1, phi2, float(abs(raw))


def compute_coefficients(phi1, phi2, medium, structTol=STRUCT_TOL):
    """
    mu, xi, xi# and the full bifurcation report of a phase-fixed pair.

    :return:    (mu, xi, xiSharp, report)
    """
    prods = bifurcation_products(phi1, phi2, medium)
    nu = 0.5 * np.dot(np.conj(prods['calA_12']), np.array([1.0, 1j]))
    m11 = prods['frakA_11']
    mu = 0.25 * PauliBasis.contract(prods['frakA_12'], SIGMA3 + 1j * SIGMA1)
    xi = 0.5 * np.trace(m11)
    xi_sharp = 0.5 * np.trace(SIGMA2.dot(m11))

    one_i = np.array([1.0, 1j])
    expected = {
        'calA_11': np.zeros(2),
        'calA_22': np.zeros(2),
        'calA_12': nu * one_i,
        'calA_21': np.conj(nu) * np.conj(one_i),
        'frakA_12': mu * (SIGMA3 - 1j * SIGMA1),
        'frakA_21': np.conj(mu) * (SIGMA3 + 1j * SIGMA1),
        'frakA_11': xi * SIGMA0 + xi_sharp * SIGMA2,
        'frakA_22': xi * SIGMA0 + xi_sharp * SIGMA2,
    }
    scale_cal = max(abs(nu), 1e-300)
    scale_frak = max(max(np.max(np.abs(prods[key])) for key in prods if key.startswith('frakA')), 1e-300)

    residuals = {}
    for key, target in expected.items():
        scale = scale_cal if key.startswith('calA') else scale_frak
        residuals[key] = float(np.max(np.abs(prods[key] - target)) / scale)

    report = {
        'products': {key: _complex_array_json(val) for key, val in prods.items()},
        'residuals': residuals,
        'max_residual': max(residuals.values()),
        'structTol': structTol,
        'xi_imag': float(abs(xi.imag)),
        'xiSharp_real': float(abs(xi_sharp.real)),
    }

    worst = max(residuals, key=residuals.get)
    if residuals[worst] > structTol:
        raise StructureViolation("Bifurcation product {} deviates from its Pauli structure by {:.3e}".format(
            worst, residuals[worst]))

    return complex(mu), float(xi.real), complex(xi_sharp), report


def _complex_array_json(arr):
    arr = np.asarray(arr)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def extract_dirac_point(medium, M, degTol=DEG_TOL, structTol=STRUCT_TOL, velTol=VEL_TOL, symTol=SYM_TOL,
                        basis=None):
    """
    Full pipeline: locate, adapt to the rotation, fix the phase, read off coefficients.

    :return:    (DiracPointData, report dict)
    """
    b_star, e_d, space, _ = locate_dirac_point(medium, M, degTol, basis)
    alias = basis.alias if basis is not None else None
    phi1, phi2 = symmetry_adapted_basis(space, alias, symTol)
    phi1, phi2, nu_f = fix_phase(phi1, phi2, medium, velTol)
    mu, xi, xi_sharp, report = compute_coefficients(phi1, phi2, medium, structTol)

    logging.info("nu_F={:.10f} mu={:.10f}{:+.3e}i xi={:.10f} xi#={:.3e}i".format(
        nu_f, mu.real, mu.imag, xi, xi_sharp.imag))

    dpd = DiracPointData(medium.lattice.K, e_d, b_star, phi1, phi2, nu_f, mu, xi, xi_sharp, M=M, alias=alias)
    return dpd, report


def origin_search(medium, M, **kwargs):
    """
    Rerun the pipeline with the origin moved to each threefold rotation centre and
    report |Im mu|. Candidates whose translated medium breaks a symmetry axiom are
    reported with the failure instead of a value.

    :return:    (best candidate dict or None, list of candidate dicts)
    """
    candidates = []
    for y0 in medium.lattice.c3_centres():
        entry = {'y0': [float(y0[0]), float(y0[1])]}
        try:
            dpd, _ = extract_dirac_point(medium.translate(y0), M, **kwargs)
            entry.update({'mu': complex_pair(dpd.mu), 'abs_imag_mu': abs(dpd.mu.imag), 'nuF': dpd.nuF})
        except NumericalFailure as e:
            entry['failure'] = type(e).__name__
        candidates.append(entry)
        logging.debug("Origin candidate {}: {}".format(entry['y0'], entry))

    usable = [c for c in candidates if 'abs_imag_mu' in c]
    best = min(usable, key=lambda c: c['abs_imag_mu']) if usable else None
    return best, candidates
