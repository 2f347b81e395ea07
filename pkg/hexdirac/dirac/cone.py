"""
Cone verification around the Dirac point.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

import numpy as np
from joblib import Parallel, delayed

from hexdirac.bloch.solver import PlaneWaveBasis, compute_bands


def _sample(medium, dpd, basis, r, angle):
    kappa = r * np.array([np.cos(angle), np.sin(angle)])
    bands = compute_bands(medium, dpd.K + kappa, dpd.bStar + 1, basis.M, basis=basis)
    e_minus, e_plus = bands.eigenvalues[dpd.bStar - 1], bands.eigenvalues[dpd.bStar]

    # projection of the two cone modes onto span{e^{i kappa.y} Phi1, e^{i kappa.y} Phi2}
    span = np.column_stack([basis.vector(dpd.Phi1), basis.vector(dpd.Phi2)])
    q, _ = np.linalg.qr(span)
    modes = bands.vectors[:, dpd.bStar - 1:dpd.bStar + 1]
    proj_residual = float(np.max(np.linalg.norm(modes - q.dot(q.conj().T.dot(modes)), axis=0)))

    slope = (e_plus - e_minus) / (2.0 * r)
    return {'r': float(r), 'angle': float(angle), 'E_minus': float(e_minus), 'E_plus': float(e_plus),
            'slope': float(slope), 'rel_slope_error': float(abs(slope - dpd.nuF) / dpd.nuF),
            'proj_residual': proj_residual}


def rotation_closed(degrees):
    """Whether a set of directions (degrees) is mapped onto itself by the 120 degree rotation."""
    def same(a, b):
        return abs((a - b + 180.0) % 360.0 - 180.0) < 1e-9
    return all(any(same(d + 120.0, e) for e in degrees) for d in degrees)


def fit_directions(rows, E_D, nuF):
    """
    Least-squares slope of the half splitting (E_+ - E_-)/2 = s r through the origin,
    one fit per direction over all radii.

    :return:    list of dicts angle, slope, rel_slope_error, E_D_drift
    """
    fits = []
    for angle in sorted(set(row['angle'] for row in rows)):
        sel = [row for row in rows if row['angle'] == angle]
        r = np.array([row['r'] for row in sel])
        half = np.array([0.5 * (row['E_plus'] - row['E_minus']) for row in sel])
        mid = np.array([0.5 * (row['E_plus'] + row['E_minus']) for row in sel])
        slope = float(r.dot(half) / r.dot(r))
        fits.append({'angle': angle, 'slope': slope, 'rel_slope_error': abs(slope - nuF) / nuF,
                     'E_D_drift': float(np.max(np.abs(mid - E_D)))})
    return fits


def verify_cone(medium, dpd, radii, directions, M, threads=1):
    """
    Fit E_+/-(K + kappa) = E_D +/- nu_F |kappa| along several directions.

    The index set is held fixed at the one of K so that nearby fibres are
    discretized identically. Each direction gets a least-squares slope over
    the radii; the anisotropy is the spread of those slopes relative to nu_F.

    :param medium:      FourierMedium
    :param dpd:         DiracPointData
    :param radii:       list of |kappa|
    :param directions:  list of angles (radians)
    :param M:           truncation
    :param threads:     joblib workers
    :return:            report dict
    """
    basis = PlaneWaveBasis(medium.lattice, dpd.K, M)
    jobs = [(r, a) for r in radii for a in directions]
    rows = Parallel(n_jobs=threads, backend="threading")(
        delayed(_sample)(medium, dpd, basis, r, a) for r, a in jobs)

    fits = fit_directions(rows, dpd.E_D, dpd.nuF)
    slopes = [fit['slope'] for fit in fits]
    anisotropy = (max(slopes) - min(slopes)) / dpd.nuF

    residual_by_radius = {}
    for r in radii:
        residual_by_radius[float(r)] = float(np.mean([row['proj_residual'] for row in rows if row['r'] == r]))

    ordered = sorted(residual_by_radius)
    ratios = [residual_by_radius[b] / residual_by_radius[a] for a, b in zip(ordered[:-1], ordered[1:])
              if residual_by_radius[a] > 0]

    report = {
        'samples': rows,
        'fits': fits,
        'max_rel_slope_error': max(fit['rel_slope_error'] for fit in fits),
        'max_sample_slope_error': max(row['rel_slope_error'] for row in rows),
        'anisotropy': anisotropy,
        'proj_residual_by_radius': {str(k): v for k, v in residual_by_radius.items()},
        'proj_residual_ratios': ratios,
    }
    logging.info("Cone check: max slope error {:.3e}, anisotropy {:.3e}".format(report['max_rel_slope_error'],
                                                                                anisotropy))
    return report
