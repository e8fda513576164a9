"""Exception types raised across the package."""


class IcoWalkError(ValueError):
    """Base class for all package-specific errors."""


class NormalizationError(IcoWalkError):
    """An input vector that must have unit norm does not."""


class LatticeSizingError(IcoWalkError):
    """An evolution step would push amplitude past the lattice boundary."""


class ProcessSpecError(IcoWalkError):
    """A process-specification document is malformed; message names the path."""


class ExpansionSizeError(IcoWalkError):
    """A requested operator expansion would exceed the term-count guard."""


class ZeroBranchError(IcoWalkError):
    """Normalization was requested on a branch with zero weight."""
