"""Exception types shared across the toolkit."""

from __future__ import annotations


class ResgrowError(Exception):
    """Base class for all toolkit errors."""


class DecompositionError(ResgrowError):
    """A dense factorization failed or violated its accuracy contract."""


class NearSingularError(ResgrowError):
    """A shifted matrix A - zI is numerically singular.

    Raised when the smallest singular value falls at or below the
    configured singularity tolerance.  The offending value is kept on
    the exception so callers can report it.
    """

    def __init__(self, message: str, sigma_min: float):
        super().__init__(message)
        self.sigma_min = float(sigma_min)


class DomainError(ResgrowError):
    """A geometric precondition was violated (point outside the region
    where the requested operation is defined)."""


class SearchError(ResgrowError):
    """The path search terminated without reaching an eigenvalue.

    Carries the partial vertex list so the caller can inspect or emit
    the progress made before the failure.
    """

    def __init__(
        self,
        message: str,
        vertices: tuple[complex, ...],
        reason: str,
        suspected_local_min: bool = False,
    ):
        super().__init__(message)
        self.vertices = tuple(vertices)
        self.reason = str(reason)
        self.suspected_local_min = bool(suspected_local_min)
