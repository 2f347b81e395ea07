"""
Honeycomb media (A, V) as truncated reciprocal-lattice Fourier series and
the Fourier-space operators built on them:

    L0 f    = -div(A grad f) + V f
    calA f  = (1/i) [A grad f + div(A f)],      (div(A f))_i = d_j (a_ji f)
    frakA f = d_l(a_li d_j f) + d_j(a_il d_l f)

All products are exact coefficient convolutions; the output support grows by
the medium cutoff.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

import numpy as np

from hexdirac.lattice.geometry import HoneycombLattice
from hexdirac.media.fields import QuasiPeriodicField, accumulate
from hexdirac.utils.errors import EllipticityError

ELLIPTICITY_FLOOR = 1e-6

# nearest reciprocal star of the lattice convention, closed under the rotation
REFERENCE_STAR = [(1, 0), (0, 1), (1, -1)]


class FourierMedium:
    """
    Medium pair (A, V) with A(y) = sum_G Ahat_G e^{iG.y}, V(y) = sum_G Vhat_G e^{iG.y}.

    The two series are stored on one merged index list.
    """

    def __init__(self, lattice, Ahat, Vhat, ellipticity_floor=ELLIPTICITY_FLOOR):
        """
        :param lattice:             HoneycombLattice
        :param Ahat:                dict (m1, m2) -> 2x2 complex matrix
        :param Vhat:                dict (m1, m2) -> complex
        :param ellipticity_floor:   smallest admissible eigenvalue of A(y)
        """
        self.lattice = lattice
        keys = sorted(set(Ahat.keys()) | set(Vhat.keys()))
        if not keys:
            keys = [(0, 0)]
        self.indices = np.array(keys, dtype=int).reshape(-1, 2)
        self.A_coeffs = np.array([np.asarray(Ahat.get(m, np.zeros((2, 2))), dtype=complex) for m in keys])
        self.V_coeffs = np.array([complex(Vhat.get(m, 0.0)) for m in keys])
        self.cutoff = int(np.max(np.abs(self.indices)))
        self.ellipticity_floor = ellipticity_floor

        lam = self.min_ellipticity()
        if lam < ellipticity_floor:
            raise EllipticityError("Smallest eigenvalue of A is {:.3e} < floor {:.1e}".format(lam, ellipticity_floor))

    @property
    def Ahat(self):
        return {tuple(m): a for m, a in zip(self.indices.tolist(), self.A_coeffs)}

    @property
    def Vhat(self):
        return {tuple(m): v for m, v in zip(self.indices.tolist(), self.V_coeffs)}

    @property
    def is_isotropic(self):
        """A is a constant multiple of the identity."""
        const = np.all(self.indices == 0, axis=1)
        a0 = self.A_coeffs[const][0] if np.any(const) else np.zeros((2, 2))
        rest = np.max(np.abs(self.A_coeffs[~const])) if np.any(~const) else 0.0
        return rest == 0.0 and abs(a0[0, 1]) == 0.0 and abs(a0[1, 0]) == 0.0 and a0[0, 0] == a0[1, 1]

    @property
    def V0_sign(self):
        """Sign of the largest potential coefficient, 0 for a potential-free medium."""
        nz = np.abs(self.V_coeffs) > 0
        if not np.any(nz):
            return 0
        return int(np.sign(self.V_coeffs.real[np.argmax(np.abs(self.V_coeffs))]))

    def _phases(self, points):
        points = np.asarray(points, dtype=float)
        g = self.lattice.reciprocal_vector(self.indices.astype(float))
        return np.exp(1j * points.reshape(-1, 2).dot(g.T)), points.shape[:-1]

    def A_at(self, points):
        """Samples of A at points (..., 2), shape (..., 2, 2)."""
        phase, shape = self._phases(points)
        return np.einsum('pg,gij->pij', phase, self.A_coeffs).reshape(shape + (2, 2))

    def V_at(self, points):
        phase, shape = self._phases(points)
        return phase.dot(self.V_coeffs).reshape(shape)

    def cell_samples(self, n):
        """Points y = (a/n) v1 + (b/n) v2 of an n x n sampling of the unit cell."""
        s = np.arange(n) / float(n)
        s1, s2 = np.meshgrid(s, s, indexing='ij')
        return s1[..., None] * self.lattice.v1 + s2[..., None] * self.lattice.v2

    def min_ellipticity(self, n=None):
        n = n or max(8, 2 * self.cutoff + 2)
        a = self.A_at(self.cell_samples(n))
        herm = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
        return float(np.min(np.linalg.eigvalsh(herm)))

    def translate(self, y0):
        """Medium y -> (A, V)(y + y0)."""
        phase, _ = self._phases(np.asarray(y0, dtype=float))
        phase = phase.reshape(-1)
        ahat = {tuple(m): a * p for m, a, p in zip(self.indices.tolist(), self.A_coeffs, phase)}
        vhat = {tuple(m): v * p for m, v, p in zip(self.indices.tolist(), self.V_coeffs, phase)}
        return FourierMedium(self.lattice, ahat, vhat, self.ellipticity_floor)

    def to_json(self):
        """JSON document {lattice: {scale}, cutoff, Ahat: [[m1, m2, 4 x (re, im)]], Vhat: [[m1, m2, re, im]]}."""
        ahat = []
        vhat = []
        for m, a, v in zip(self.indices.tolist(), self.A_coeffs, self.V_coeffs):
            if np.any(a != 0):
                row = list(m)
                for z in a.reshape(-1):
                    row.extend([float(z.real), float(z.imag)])
                ahat.append(row)
            if v != 0:
                vhat.append(list(m) + [float(v.real), float(v.imag)])
        return {'lattice': {'scale': self.lattice.scale}, 'cutoff': self.cutoff, 'Ahat': ahat, 'Vhat': vhat}

    @classmethod
    def from_json(cls, doc, lattice=None):
        lattice = lattice or HoneycombLattice(doc['lattice']['scale'])
        ahat = {}
        for row in doc.get('Ahat', []):
            vals = np.array(row[2:], dtype=float)
            ahat[(int(row[0]), int(row[1]))] = (vals[0::2] + 1j * vals[1::2]).reshape(2, 2)
        vhat = {(int(r[0]), int(r[1])): complex(r[2], r[3]) for r in doc.get('Vhat', [])}
        return cls(lattice, ahat, vhat)


def make_reference_medium(lattice, V0):
    """
    A = Id and the three-cosine honeycomb potential.

    V(y) = V0 [cos(k1.y) + cos(k2.y) + cos((k1 - k2).y)]

    :param lattice:     HoneycombLattice
    :param V0:          potential amplitude
    :return:            FourierMedium
    """
    ahat = {(0, 0): np.eye(2, dtype=complex)}
    vhat = {}
    if V0 != 0:
        for m1, m2 in REFERENCE_STAR:
            vhat[(m1, m2)] = 0.5 * V0
            vhat[(-m1, -m2)] = 0.5 * V0
    return FourierMedium(lattice, ahat, vhat)


def free_medium(lattice):
    return make_reference_medium(lattice, 0.0)


def check_symmetries(medium, gridSize, tol):
    """
    Measure the honeycomb axioms on real-space samples of the unit cell.

    :param medium:      FourierMedium
    :param gridSize:    samples per generator direction
    :param tol:         pass threshold of every violation
    :return:            report dict with one max violation per axiom and 'pass'
    """
    report = {'gridSize': int(gridSize), 'tol': float(tol), 'aliased': False}
    if gridSize < 2 * medium.cutoff + 2:
        logging.warning("Symmetry grid {} aliases a medium of cutoff {}".format(gridSize, medium.cutoff))
        report['aliased'] = True

    lat = medium.lattice
    y = medium.cell_samples(gridSize)
    a = medium.A_at(y)
    v = medium.V_at(y)
    a_minus = medium.A_at(-y)
    v_minus = medium.V_at(-y)
    y_rot = y.dot(lat.Rinv.T)
    a_rot = medium.A_at(y_rot)
    v_rot = medium.V_at(y_rot)

    report['hermitian_A'] = float(np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2)))))
    report['real_V'] = float(np.max(np.abs(v.imag)))
    report['PC_A'] = float(np.max(np.abs(a_minus - np.conj(a))))
    report['P_V'] = float(np.max(np.abs(v_minus - v)))
    covariant = np.einsum('ji,pqjk,kl->pqil', lat.R, a, lat.R)
    report['rotation_A'] = float(np.max(np.abs(a_rot - covariant)))
    report['rotation_V'] = float(np.max(np.abs(v_rot - v)))
    report['ellipticity'] = medium.min_ellipticity(gridSize)

    violations = [report[key] for key in ('hermitian_A', 'real_V', 'PC_A', 'P_V', 'rotation_A', 'rotation_V')]
    report['max_violation'] = float(max(violations))
    report['pass'] = bool(report['max_violation'] < tol and report['ellipticity'] >= medium.ellipticity_floor
                          and not report['aliased'])

    logging.debug("Symmetry check: max violation {:.3e}, ellipticity {:.3e}".format(report['max_violation'],
                                                                                   report['ellipticity']))
    return report


def _pairs(medium, f):
    """
    All (medium coefficient, field coefficient) pairs of a convolution.

    :return:    output indices (h*g, 2), q = k+G (h*g, 2), q' = k+G' (h*g, 2),
                Ahat (h*g, 2, 2), Vhat (h*g,), c_G (h*g,)
    """
    nh = medium.indices.shape[0]
    ng = f.indices.shape[0]
    out_idx = (medium.indices[:, None, :] + f.indices[None, :, :]).reshape(-1, 2)
    q = np.broadcast_to(f.wavevectors[None, :, :], (nh, ng, 2)).reshape(-1, 2)
    qp = f.k + medium.lattice.reciprocal_vector(out_idx.astype(float))
    ahat = np.broadcast_to(medium.A_coeffs[:, None], (nh, ng, 2, 2)).reshape(-1, 2, 2)
    vhat = np.broadcast_to(medium.V_coeffs[:, None], (nh, ng)).reshape(-1)
    c = np.broadcast_to(f.coeffs[None, :], (nh, ng)).reshape(-1)
    return out_idx, q, qp, ahat, vhat, c


def apply_L0(medium, f):
    """
    -div(A grad f) + V f in Fourier space.

    :param medium:      FourierMedium
    :param f:           QuasiPeriodicField
    :return:            QuasiPeriodicField with cutoff f.cutoff + medium.cutoff
    """
    out_idx, q, qp, ahat, vhat, c = _pairs(medium, f)
    vals = (np.einsum('pi,pij,pj->p', qp, ahat, q) + vhat) * c
    idx, vals = accumulate(out_idx, vals)
    return QuasiPeriodicField(f.lattice, f.k, idx, vals)


def apply_calA(medium, f):
    """
    First order operator calA f = (1/i)[A grad f + div(A f)].

    :return:    [component 1, component 2] as QuasiPeriodicFields
    """
    out_idx, q, qp, ahat, _, c = _pairs(medium, f)
    vec = np.einsum('pij,pj->pi', ahat, q) + np.einsum('pji,pj->pi', ahat, qp)
    idx, vals = accumulate(out_idx, vec * c[:, None])
    return [QuasiPeriodicField(f.lattice, f.k, idx, vals[:, i]) for i in range(2)]


def apply_frakA(medium, f):
    """
    Second order operator (frakA f)_ij = d_l(a_li d_j f) + d_j(a_il d_l f).

    For A = Id this is twice the Hessian.

    :return:    2x2 nested list of QuasiPeriodicFields
    """
    out_idx, q, qp, ahat, _, c = _pairs(medium, f)
    at_qp = np.einsum('pli,pl->pi', ahat, qp)
    a_q = np.einsum('pil,pl->pi', ahat, q)
    mat = -(at_qp[:, :, None] * q[:, None, :] + a_q[:, :, None] * qp[:, None, :])
    idx, vals = accumulate(out_idx, mat * c[:, None, None])
    return [[QuasiPeriodicField(f.lattice, f.k, idx, vals[:, i, j]) for j in range(2)] for i in range(2)]


def matrix_trace_frakA(medium, f, m):
    """Tr(M frakA f) for a constant 2x2 matrix M."""
    fa = apply_frakA(medium, f)
    out = None
    for i in range(2):
        for j in range(2):
            term = m[j, i] * fa[i][j]
            out = term if out is None else out + term
    return out
