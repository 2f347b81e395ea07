from hexdirac.strain.deformation import Deformation, StrainGrid, jacobian_U, erf_profile
from hexdirac.strain.gauge import (GaugeFieldData, pseudo_fields, magnetic_field, general_coupling,
                                   erf_gauge_deformation, linear_gauge_deformation)

__all__ = ['Deformation', 'StrainGrid', 'jacobian_U', 'erf_profile', 'GaugeFieldData', 'pseudo_fields',
           'magnetic_field', 'general_coupling', 'erf_gauge_deformation', 'linear_gauge_deformation']
