"""
Exceptions raised by the numerical modules.

Configuration problems are reported with
:class:`hexdirac.data_reader.ini_reader.ValidationException`; everything a
computation can fail on derives from :class:`NumericalFailure`.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""


class NumericalFailure(Exception):
    """Base class for failures of a numerical stage."""

    def __init__(self, *args, **kwargs):
        Exception.__init__(self, *args, **kwargs)


class AcceptanceFailure(Exception):
    """A computed quantity fell outside an acceptance window."""

    def __init__(self, *args, **kwargs):
        Exception.__init__(self, *args, **kwargs)


class ConventionError(NumericalFailure):
    """Lattice conventions are inconsistent (e.g. R(K+G) - K is not a lattice vector)."""


class AliasingError(NumericalFailure):
    """A sampling grid is too coarse for the Fourier support it has to carry."""


class EllipticityError(NumericalFailure):
    """The material weight A is not uniformly elliptic."""


class EigensolverError(NumericalFailure):
    """Dense eigensolver did not converge."""


class NoDegeneracyFound(NumericalFailure):
    """No isolated double eigenvalue at the zone corner."""


class HigherDegeneracy(NumericalFailure):
    """Three or more eigenvalues collapse at the zone corner."""


class SymmetryMismatch(NumericalFailure):
    """The rotation restricted to an eigenspace has the wrong eigenvalues."""


class DegenerateVelocity(NumericalFailure):
    """The Fermi velocity vanishes, the cone is degenerate."""


class StructureViolation(NumericalFailure):
    """Bifurcation inner products deviate from their Pauli structure."""


class ComplexMu(NumericalFailure):
    """The simplified gauge form was requested for a complex coupling mu."""


class BoxTooSmall(NumericalFailure):
    """A localized mode does not decay inside the periodic box."""


class SupportOverflow(NumericalFailure):
    """An envelope is not localized inside the supercell."""


class GridMismatch(NumericalFailure):
    """Fields or snapshot times live on incompatible grids."""


class FiberTooLarge(NumericalFailure):
    """A dense fibre eigensolve exceeds the configured memory guard."""


class InstabilityError(NumericalFailure):
    """Explicit time stepping became unstable."""


class KrylovConvergenceError(NumericalFailure):
    """The Krylov exponential did not reach its tolerance."""

    def __init__(self, step, estimate, *args):
        self.step = step
        self.estimate = estimate
        message = "Krylov step {} did not converge (error estimate {:.3e})".format(step, estimate)
        NumericalFailure.__init__(self, message, *args)
