"""
Symmetry operators on quasi-periodic fields:

    rotation   R[f](y) = f(R^{-1} y)
    PC[f](y)   = conj(f(-y))

Both act on plane-wave coefficients without any quadrature.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import numpy as np

from hexdirac.media.fields import QuasiPeriodicField

INVARIANCE_TOL = 1e-10


def rotation_shift(lattice, k):
    """
    Integer coordinates of R k - k.

    :raises ValueError:  when the fibre at k is not rotation invariant
    """
    coords = lattice.dual_coordinates(lattice.R.dot(k) - k)
    shift = np.rint(coords)
    if np.max(np.abs(coords - shift)) > INVARIANCE_TOL:
        raise ValueError("Momentum {} is not a rotation invariant point of the zone".format(k))
    return shift.astype(int)


def wrap_indices(indices, alias):
    """
    Reduce indices modulo alias into the sheared box where m1 and m1 + m2 both
    lie in [-alias/2, alias/2), the frequency range of a supercell grid with
    periods along v1 and v1 + v2.
    """
    if alias is None:
        return indices
    half = alias // 2
    indices = np.asarray(indices)
    t1 = np.mod(indices[..., 0] + half, alias) - half
    t2 = np.mod(indices[..., 0] + indices[..., 1] + half, alias) - half
    return np.stack([t1, t2 - t1], axis=-1)


def rotation_permutation(lattice, k, indices, alias=None):
    """Images G' with R(k + G) = k + G' for each row of indices."""
    image = np.asarray(indices, dtype=int).dot(lattice.rot_int.T) + rotation_shift(lattice, k)
    return wrap_indices(image, alias)


def apply_rotation_R(field, alias=None):
    """
    Rotate a field living on a rotation invariant fibre (K, K' or the zone centre).

    :param field:       QuasiPeriodicField
    :param alias:       period of a grid-consistent basis, None for the plain plane-wave sum
    :return:            QuasiPeriodicField
    """
    image = rotation_permutation(field.lattice, field.k, field.indices, alias)
    return QuasiPeriodicField(field.lattice, field.k, image, field.coeffs)


def apply_PC(field):
    """Parity composed with conjugation; conjugates each coefficient in place."""
    return QuasiPeriodicField(field.lattice, field.k, field.indices, np.conj(field.coeffs))
