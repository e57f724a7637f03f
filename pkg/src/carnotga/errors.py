"""Exception types shared across the package."""


class CarnotGAError(Exception):
    """Base class for all package-specific errors."""


class NearZeroNorm(CarnotGAError):
    """Normalization was requested for an element of numerically zero norm."""


class AntipodalVectors(CarnotGAError):
    """Rotor construction between (nearly) opposite vectors is singular."""


class DependentVectors(CarnotGAError):
    """A vector list expected to be independent is (nearly) dependent."""


class FlagMismatch(CarnotGAError):
    """Two flags or frames fail the congruence preconditions."""


class DegenerateConfiguration(CarnotGAError):
    """A point does not define a usable complete flag."""


class RotorDomain(CarnotGAError):
    """A rotor falls outside the symmetry group admitted by a model."""


class InfeasibleTarget(CarnotGAError):
    """No steering solution was found within the search bounds."""
