"""Exception types raised across torsionlab."""


class TorsionlabError(Exception):
    """Base class for all library errors."""


class DomainError(TorsionlabError, ValueError):
    """Argument outside the domain of a function."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class ZeroFinderError(TorsionlabError, RuntimeError):
    """Root bracketing or refinement failed.

    ``bracket`` holds the last interval examined and ``values`` the function
    values at its ends, so callers can report where the search broke down.
    """

    def __init__(self, message, family=None, order=None, index=None, bracket=None, values=None):
        super().__init__(message)
        self.family = family
        self.order = order
        self.index = index
        self.bracket = bracket
        self.values = values

    def __str__(self):
        base = super().__str__()
        if self.bracket is None:
            return base
        return f"{base} (family={self.family}, order={self.order}, k={self.index}, bracket={self.bracket}, values={self.values})"


class ConsistencyError(TorsionlabError, RuntimeError):
    """Two independent evaluation routes disagree beyond tolerance."""


class RankError(TorsionlabError, ValueError):
    """A boundary map or homology basis has the wrong rank."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class UnsupportedGeometryError(TorsionlabError, ValueError):
    """Requested formula does not cover this geometry or boundary condition."""
