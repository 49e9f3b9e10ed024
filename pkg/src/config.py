"""
Runtime configuration for lattice-green.

Every knob has a default, so nothing needs to be set; a local .env file or the process
environment can override the numeric tolerances and grid sizes used across the kernels
and the verification oracles.
"""

import os

from dotenv import load_dotenv

load_dotenv()

# --- Configuration ---
DEFAULT_TOL = float(os.getenv("LATTICE_GREEN_TOL", "1e-12"))
MAX_SERIES_TERMS = int(os.getenv("LATTICE_GREEN_MAX_TERMS", "20000"))
MAX_TOTAL_DEGREE = int(os.getenv("LATTICE_GREEN_MAX_DEGREE", "4000"))

# Torus quadrature grid (points per dimension, powers of two)
QUADRATURE_START_N = int(os.getenv("LATTICE_GREEN_QUAD_N", "256"))
QUADRATURE_MAX_N = int(os.getenv("LATTICE_GREEN_QUAD_MAX_N", "4096"))

VERBOSE = os.getenv("LATTICE_GREEN_VERBOSE", "0").strip().lower() in ("1", "true", "yes")
