from hexdirac.bloch.solver import PlaneWaveBasis, BandResult, assemble_fiber_matrix, compute_bands, band_path
from hexdirac.bloch.symmetry import apply_rotation_R, apply_PC

__all__ = ['PlaneWaveBasis', 'BandResult', 'assemble_fiber_matrix', 'compute_bands', 'band_path',
           'apply_rotation_R', 'apply_PC']
