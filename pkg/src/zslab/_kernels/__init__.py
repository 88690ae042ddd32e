"""Kernel backend selection.

``ZSLAB_BACKEND`` picks the implementation of the hot kernels:

* ``numba`` -- require the compiled kernels (ImportError if unavailable),
* ``python`` -- force the pure Python/numpy fallback,
* ``auto`` (default) -- numba when importable, fallback otherwise.

Both backends share one contract; ``benchmarks/bench_backends.py`` compares
them.  Length bitmasks from the numba kernels live in uint64, so whenever a
batch could produce factorization lengths above 63 the dispatcher silently
reroutes that call to the Python backend (which uses big ints).
"""
from __future__ import annotations

import os

import numpy as np

from . import python_backend
from .tables import GroupTables, tables_for

_requested = os.environ.get("ZSLAB_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "python"):
    raise RuntimeError(
        f"ZSLAB_BACKEND={_requested!r} not understood (use auto, numba or python)"
    )

if _requested == "python":
    _impl = python_backend
else:
    try:
        from . import numba_backend as _impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "numba":
            raise
        _impl = python_backend


def backend_name() -> str:
    return _impl.NAME


def enumerate_atoms(add: np.ndarray, zero: int, sub: np.ndarray) -> np.ndarray:
    return _impl.enumerate_atoms(add, zero, sub)


def zero_sum_vectors(add: np.ndarray, zero: int, sub: np.ndarray, bound: int) -> np.ndarray:
    return _impl.zero_sum_vectors(add, zero, sub, bound)


def _fits_uint64(seeds: np.ndarray, atoms: np.ndarray) -> bool:
    if len(seeds) == 0 or seeds.shape[1] == 0:
        return True
    maxw = int(seeds.sum(axis=1).max(initial=0))
    if len(atoms) and int(atoms.sum(axis=1).min()) >= 2:
        maxw //= 2  # every atom uses at least two slots
    return maxw <= 63


def masks_for_closed(rows: np.ndarray, atoms: np.ndarray) -> list[int]:
    """Length bitmasks for a subtraction-closed family of zero-sum vectors."""
    if _impl is not python_backend and not _fits_uint64(rows, atoms):
        return python_backend.masks_for_closed(rows, atoms)
    return _impl.masks_for_closed(rows, atoms)


def target_masks(
    targets: np.ndarray, atoms: np.ndarray, perms: np.ndarray | None = None
) -> list[int]:
    """Length bitmasks for arbitrary zero-sum targets."""
    if _impl is not python_backend and not _fits_uint64(targets, atoms):
        return python_backend.target_masks(targets, atoms, perms)
    return _impl.target_masks(targets, atoms, perms)


__all__ = [
    "GroupTables",
    "tables_for",
    "backend_name",
    "enumerate_atoms",
    "zero_sum_vectors",
    "masks_for_closed",
    "target_masks",
]
