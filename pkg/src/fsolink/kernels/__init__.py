"""Kernel backend selection.

Imports the compiled Cython kernels when the extension was built,
otherwise the pure numpy versions. FSOLINK_BACKEND=py forces the pure
implementation, FSOLINK_BACKEND=c requires the compiled one.
"""

import os

from fsolink.kernels.pure import GOLDEN, mix64

_requested = os.environ.get("FSOLINK_BACKEND", "").lower()
if _requested not in ("", "c", "py"):
    raise ImportError(f"FSOLINK_BACKEND must be 'c' or 'py', got {_requested!r}")

BACKEND = "python"
if _requested != "py":
    try:
        from fsolink.kernels._fast import eye_phase_stats, lfsr_bits, normal_stream

        BACKEND = "cython"
    except ImportError:
        if _requested == "c":
            raise

if BACKEND == "python":
    from fsolink.kernels.pure import eye_phase_stats, lfsr_bits, normal_stream

__all__ = [
    "BACKEND",
    "GOLDEN",
    "eye_phase_stats",
    "lfsr_bits",
    "mix64",
    "normal_stream",
]
