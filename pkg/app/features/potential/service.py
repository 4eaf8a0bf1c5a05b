"""Casimir-van der Waals surface potential and its regularised continuation.

All functions accept a scalar or a numpy array for ``x`` and return the same
kind. Values are in internal (atomic) units.
"""

from __future__ import annotations

from typing import Union

import numpy as np

from app.common.errors import DomainError
from app.features.potential.schemas import PotentialParams

ArrayLike = Union[float, np.ndarray]


def _raw(x: np.ndarray, p: PotentialParams) -> np.ndarray:
    return -p.C4 / (x**3 * (x + p.l))


def _raw_derivative(x: np.ndarray, p: PotentialParams) -> np.ndarray:
    return p.C4 * (4.0 * x + 3.0 * p.l) / (x**4 * (x + p.l) ** 2)


def _wrap(out: np.ndarray, scalar: bool) -> ArrayLike:
    return float(out) if scalar else out


def casimir_vdw(x: ArrayLike, p: PotentialParams) -> ArrayLike:
    scalar = np.ndim(x) == 0
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0.0):
        raise DomainError("casimir_vdw is defined for x > 0 only", code="potential_domain")
    return _wrap(_raw(xs, p), scalar)


def casimir_vdw_derivative(x: ArrayLike, p: PotentialParams) -> ArrayLike:
    scalar = np.ndim(x) == 0
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0.0):
        raise DomainError("casimir_vdw_derivative is defined for x > 0 only", code="potential_domain")
    return _wrap(_raw_derivative(xs, p), scalar)


def potential_floor(p: PotentialParams) -> float:
    """Constant branch V(x0) - V'(x0) x0 / 2; the minimum of the continuation."""
    v0 = float(_raw(np.float64(p.x0), p))
    dv0 = float(_raw_derivative(np.float64(p.x0), p))
    return v0 - 0.5 * dv0 * p.x0


def continued_potential(x: ArrayLike, p: PotentialParams) -> ArrayLike:
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(xs)

    v0 = float(_raw(np.float64(p.x0), p))
    dv0 = float(_raw_derivative(np.float64(p.x0), p))

    upper = xs > p.x0
    lower = xs < 0.0
    middle = ~(upper | lower)

    out[upper] = _raw(xs[upper], p)
    s = xs[middle] - p.x0
    out[middle] = v0 + dv0 * s + (dv0 / (2.0 * p.x0)) * s * s
    out[lower] = v0 - 0.5 * dv0 * p.x0

    if scalar:
        return float(out[0])
    return out.reshape(np.shape(x))


def oscillating_potential(x: ArrayLike, t: float, p: PotentialParams) -> ArrayLike:
    """W(x, t) = V_cont(x - d sin(omega t)), the Kramers-Henneberger frame."""
    if p.is_static:
        return continued_potential(x, p)
    shift = p.d * np.sin(p.omega * t)
    return continued_potential(np.asarray(x, dtype=float) - shift if np.ndim(x) else float(x) - shift, p)


__all__ = [
    "casimir_vdw",
    "casimir_vdw_derivative",
    "potential_floor",
    "continued_potential",
    "oscillating_potential",
]
