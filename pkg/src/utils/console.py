"""
Console reporting helpers.

Diagnostics go to stderr so that stdout stays a clean JSON/CSV channel for the CLI.
"""

import sys

from src import config


def log_info(message: str) -> None:
    """Progress note, printed only when LATTICE_GREEN_VERBOSE is on."""
    if config.VERBOSE:
        print(f"🔹 {message}", file=sys.stderr, flush=True)


def log_warning(message: str) -> None:
    print(f"⚠️ [Warning] {message}", file=sys.stderr, flush=True)


def log_error(context: str, error_obj: BaseException) -> None:
    """
    Print a framed error block.

    Parameters:
    -----------
    context : str
        What was being attempted (e.g. "eval d=2 z=(4+0.5j)").
    error_obj : BaseException
        The exception that stopped it.
    """
    print(f"\n❌ [ERROR] {context}", file=sys.stderr, flush=True)
    print(f"   {type(error_obj).__name__}: {error_obj}", file=sys.stderr, flush=True)
    print("-" * 30, file=sys.stderr, flush=True)


def log_success(message: str) -> None:
    print(f"✅ {message}", file=sys.stderr, flush=True)
