"""
Numerical kernels.

MODULES:
- special_functions: HalfInt, Pochhammer symbols, digamma, principal branches.
- hypergeometric: pFq and Lauricella F_B / F_C series.
- resolvent: every representation of G(z, n) plus the region dispatcher.
- fundamental_solutions: exact fundamental solutions on Z² and stencil checks.
"""

from .errors import ConvergenceError, RegionError
from .fundamental_solutions import (
    OPERATORS,
    Channels,
    FundSolValue,
    check_fundamental,
    fundsol_dalembertian,
    fundsol_embedded,
    fundsol_h0,
    fundsol_h0_minus8,
    fundsol_table,
    stencil_residual,
)
from .resolvent import REPRESENTATIONS, GreenValue, LatticePoint, SpectralPoint, diag_p0, green_auto

__all__ = [
    "ConvergenceError", "RegionError",
    "OPERATORS", "Channels", "FundSolValue", "check_fundamental", "fundsol_dalembertian",
    "fundsol_embedded", "fundsol_h0", "fundsol_h0_minus8", "fundsol_table", "stencil_residual",
    "REPRESENTATIONS", "GreenValue", "LatticePoint", "SpectralPoint", "diag_p0", "green_auto",
]
