from hexdirac.validation.strained_operator import StrainedOperator, apply_Leps, expansion_residual, sample_field
from hexdirac.validation.propagators import solve_schrodinger, solve_wave, max_eigenvalue
from hexdirac.validation.envelope import (build_envelope_initial, solve_effective_envelope, envelope_error,
                                          convergence_study, expansion_study, gaussian_envelope)

__all__ = ['StrainedOperator', 'apply_Leps', 'expansion_residual', 'sample_field', 'solve_schrodinger',
           'solve_wave', 'max_eigenvalue', 'build_envelope_initial', 'solve_effective_envelope', 'envelope_error',
           'convergence_study', 'expansion_study', 'gaussian_envelope']
