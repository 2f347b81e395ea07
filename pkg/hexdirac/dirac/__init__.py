from hexdirac.dirac.dirac_point import (DiracPointData, locate_dirac_point, symmetry_adapted_basis, fix_phase,
                                        apply_gauge, compute_coefficients, extract_dirac_point, origin_search)
from hexdirac.dirac.cone import verify_cone

__all__ = ['DiracPointData', 'locate_dirac_point', 'symmetry_adapted_basis', 'fix_phase', 'apply_gauge',
           'compute_coefficients', 'extract_dirac_point', 'origin_search', 'verify_cone']
