"""
Shared utilities.

MODULES:
- console: stderr reporting helpers (info / success / warning / error blocks).
"""

from . import console

__all__ = ["console"]
