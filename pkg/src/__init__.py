"""
lattice-green

Resolvent kernel G(z, n) of the discrete Laplacian on Z^d: series and closed-form
representations, exact fundamental solutions on Z², and brute-force oracles that
cross-check all of them.
"""

__version__ = "1.0.0"
