"""Row-wise weighted median kernels, compiled core with numpy fallback.

The compiled extension is used when it has been built; otherwise the numpy
implementation takes over.  Set ``SPARSECENTERS_BACKEND=numpy`` (or
``cython``) to force a backend; ``select_backend`` switches at runtime,
which the kernel benchmark uses to compare the two.
"""

from __future__ import annotations

import os

import numpy as np

from . import _npkernels

try:
    from . import _cykernels
except ImportError:
    _cykernels = None

_BACKENDS = {"numpy": _npkernels}
if _cykernels is not None:
    _BACKENDS["cython"] = _cykernels

BACKEND = ""
_active = _npkernels


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def select_backend(name: str) -> str:
    """Activate a kernel backend by name; returns the active name."""
    global BACKEND, _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown or unavailable kernel backend {name!r}; "
            f"available: {', '.join(available_backends())}"
        ) from None
    BACKEND = name
    return BACKEND


def rowwise_weighted_median(values, weights) -> tuple[np.ndarray, np.ndarray]:
    """Per-row weighted median and dispersion of an (m, n) matrix.

    Dispatches to the active backend.  Weights must be nonnegative and sum
    to a positive total; rows with duplicated values accumulate their mass,
    and an exact half-mass split resolves to the midpoint of the flat
    interval (zero-weight columns never bound that interval).
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    return _active.rowwise_weighted_median(values, weights)


select_backend(
    os.environ.get(
        "SPARSECENTERS_BACKEND",
        "cython" if _cykernels is not None else "numpy",
    )
)
