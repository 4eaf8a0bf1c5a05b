"""Tridiagonal elimination (Thomas algorithm) for complex systems."""

from __future__ import annotations

from typing import Tuple

import numpy as np
from numba import njit


@njit(cache=True)
def _thomas(lower, diag, upper, rhs):
    """Forward elimination and back substitution without pivoting.

    Returns (x, status) where status is -1 on success or the row index of
    the first zero pivot.
    """
    n = rhs.shape[0]
    c = np.empty(n, dtype=np.complex128)
    d = np.empty(n, dtype=np.complex128)
    x = np.empty(n, dtype=np.complex128)

    pivot = diag[0]
    if pivot == 0:
        return x, 0
    c[0] = upper[0] / pivot if n > 1 else 0.0
    d[0] = rhs[0] / pivot
    for i in range(1, n):
        pivot = diag[i] - lower[i - 1] * c[i - 1]
        if pivot == 0:
            return x, i
        if i < n - 1:
            c[i] = upper[i] / pivot
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot

    x[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x, -1


def thomas_solve(
    lower: np.ndarray, diag: np.ndarray, upper: np.ndarray, rhs: np.ndarray
) -> Tuple[np.ndarray, int]:
    return _thomas(
        np.ascontiguousarray(lower, dtype=np.complex128),
        np.ascontiguousarray(diag, dtype=np.complex128),
        np.ascontiguousarray(upper, dtype=np.complex128),
        np.ascontiguousarray(rhs, dtype=np.complex128),
    )


def is_diagonally_dominant(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray) -> bool:
    off = np.zeros(diag.shape[0])
    off[1:] += np.abs(lower)
    off[:-1] += np.abs(upper)
    return bool(np.all(np.abs(diag) > off))


__all__ = ["thomas_solve", "is_diagonally_dominant"]
