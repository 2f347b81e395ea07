from hexdirac.media.fields import QuasiPeriodicField
from hexdirac.media.honeycomb import (FourierMedium, make_reference_medium, free_medium, check_symmetries,
                                      apply_calA, apply_frakA, apply_L0)

__all__ = ['QuasiPeriodicField', 'FourierMedium', 'make_reference_medium', 'free_medium', 'check_symmetries',
           'apply_calA', 'apply_frakA', 'apply_L0']
