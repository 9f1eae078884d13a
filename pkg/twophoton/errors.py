"""Exception hierarchy for the two-photon Dicke toolkit."""


class TwoPhotonError(Exception):
    """Base class for all toolkit errors."""


class DomainError(TwoPhotonError, ValueError):
    """A physical validity condition is violated.

    ``condition`` is a short tag naming the violated condition, e.g.
    ``"collapse"``, ``"criticality"``, ``"normal-phase"``, ``"radicand"``.
    """

    def __init__(self, message: str, condition: str = "domain"):
        super().__init__(message)
        self.condition = condition


class DimensionError(TwoPhotonError, ValueError):
    """Operator and vector sizes do not match, or a space is too large."""


class SolverError(TwoPhotonError, RuntimeError):
    """An eigensolver failed to converge."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class UnresolvedPointError(TwoPhotonError):
    """A quartic-well point failed the box certification."""

    def __init__(self, message: str, eta: float):
        super().__init__(message)
        self.eta = eta


class CollapseError(TwoPhotonError, ValueError):
    """A data collapse cannot be built from the given curves."""
