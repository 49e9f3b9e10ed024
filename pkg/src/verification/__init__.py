"""
Independent checks for the kernels.

MODULES:
- oracles: torus quadrature, Bessel-Laplace integral, killed random walks.
- identity_checks: exact and numeric identities behind the representations.
- suites: the named suites behind `lattice_green.py verify`.
"""

from .suites import SUITES, SuiteCase, SuiteReport, run_suite

__all__ = ["SUITES", "SuiteCase", "SuiteReport", "run_suite"]
