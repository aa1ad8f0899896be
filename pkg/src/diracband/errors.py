"""Exception types shared across the package."""


class DiracBandError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateEnergy(DiracBandError):
    """Energy too close to a point where the closed forms are singular."""


class SingularTransform(DiracBandError):
    """A transformation-function component vanishes at the requested point."""


class NonRealDiscriminant(DiracBandError):
    """Discriminant came out with a non-negligible imaginary part.

    Signals a branch bug in the complex evaluation, not a physical result.
    """


class GridTooCoarse(DiracBandError):
    """Band-edge scan produced an inconsistent table; refine the grid."""


class NotAllowedBand(DiracBandError):
    """Dispersion requested on an interval that is not an allowed band."""


class StepCountTooSmall(DiracBandError):
    """Monodromy determinant drifted from 1; increase the step count."""


class EvaluationDomainError(DiracBandError):
    """Requested evaluation point leaves a field's domain."""
