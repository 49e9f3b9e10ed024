#!/usr/bin/env python3
"""
lattice-green command-line entry point.

Run: python lattice_green.py eval --dim 2 --z=4+0.5i --n 2,1
"""

import sys

from dotenv import load_dotenv

load_dotenv()

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
