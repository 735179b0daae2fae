"""Backend dispatch for the bulk evaluation/interpolation kernels.

The FFINV_BACKEND environment variable selects the implementation:
  auto  - numba when importable, else numpy (default)
  numba - force the compiled kernels (raises if numba is missing)
  numpy - force the pure-numpy kernels
"""

from __future__ import annotations

import os

import numpy as np

from . import _numpy

try:
    from . import _numba
    HAS_NUMBA = True
except ImportError:
    _numba = None
    HAS_NUMBA = False

_FORCED: str | None = None


def backend_name() -> str:
    choice = _FORCED or os.environ.get("FFINV_BACKEND", "auto").lower()
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("FFINV_BACKEND=numba but numba is not installed")
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise RuntimeError(f"unknown FFINV_BACKEND value {choice!r}")


def set_backend(name: str | None) -> None:
    """Programmatic override (used by the benchmark); None restores env control."""
    global _FORCED
    _FORCED = name


def _mod():
    return _numba if backend_name() == "numba" else _numpy


def eval_many(coeffs, xs, tower):
    coeffs = np.asarray(coeffs, dtype=np.int64)
    xs = np.asarray(xs, dtype=np.int64)
    return _mod().eval_many(coeffs, xs, tower)


def newton_interpolate(xs, ys, tower):
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    return _mod().newton_interpolate(xs, ys, tower)
