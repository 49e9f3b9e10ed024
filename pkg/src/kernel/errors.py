"""
Exception types shared by the kernel and verification packages.

RegionError   -> the requested representation does not cover (z, n), or a branch
                 function was asked for a value on its cut.
ConvergenceError -> a series or quadrature stopped before meeting its tolerance.
"""

from typing import Optional


class RegionError(ValueError):
    """Input lies outside the validity region of the requested formula."""


class ConvergenceError(RuntimeError):
    """
    A truncated evaluation failed to reach its tolerance.

    The partial result is kept so callers can still report it.
    """

    def __init__(
        self,
        message: str,
        partial: Optional[complex] = None,
        err_estimate: Optional[float] = None,
        terms_used: int = 0,
    ):
        super().__init__(message)
        self.partial = partial
        self.err_estimate = err_estimate
        self.terms_used = terms_used
