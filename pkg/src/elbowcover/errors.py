class ElbowCoverError(Exception):
    """Base class for toolkit errors."""


class GraphError(ElbowCoverError, ValueError):
    """Malformed graph input (self-loop, duplicate edge, bad endpoint)."""


class BudgetExceeded(ElbowCoverError):
    """An exact solver or oracle was asked to go beyond its size budget."""


class VerificationError(ElbowCoverError):
    """A certificate (cover, family, orientation) failed verification."""


class ConstructionError(ElbowCoverError):
    """Every construction strategy failed to produce a verified object."""
