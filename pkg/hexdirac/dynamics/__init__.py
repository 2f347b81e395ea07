from hexdirac.dynamics.grid import PeriodicGrid, SpinorField, Trajectory
from hexdirac.dynamics.dirac_operator import DiracOperatorSpec, apply_dirac, evolve, dirac_spectrum, energy
from hexdirac.dynamics.landau import (LandauSpec, landau_energy, landau_mode, erf_zero_mode,
                                      wavepacket_superposition, fidelity)

__all__ = ['PeriodicGrid', 'SpinorField', 'Trajectory', 'DiracOperatorSpec', 'apply_dirac', 'evolve',
           'dirac_spectrum', 'energy', 'LandauSpec', 'landau_energy', 'landau_mode', 'erf_zero_mode',
           'wavepacket_superposition', 'fidelity']
