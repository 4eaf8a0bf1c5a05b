"""Time-independent reflectivity oracle for the static continuation.

A purely transmitted wave exp(-ik'x) is set up deep inside the constant
branch and integrated outward; the result is matched to incoming and
outgoing plane waves at x_f.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from app.Core.config import get_settings
from app.common.errors import ConfigurationError, EvanescentTransmissionError, IntegrationFailureError
from app.features.potential.schemas import PotentialParams
from app.features.potential.service import (
    casimir_vdw,
    casimir_vdw_derivative,
    continued_potential,
    potential_floor,
)
from app.features.stationary.schemas import ScatteringSolution
from app.features.units.schemas import Dimension
from app.features.units.service import si_to_internal

logger = logging.getLogger("stationary.service")

X_I_DEFAULT_M = -10e-9
X_F_CAP_M = 2e-6
X_F_THRESHOLD = 1e-8


def integrate_scattering(
    k: float,
    mass: float,
    potential: Callable[[float], float],
    v_inner: float,
    x_i: float,
    x_f: float,
    breakpoints: Iterable[float] = (),
    *,
    rtol: Optional[float] = None,
    atol: Optional[float] = None,
    method: str = "RK45",
    max_evaluations: Optional[int] = None,
) -> ScatteringSolution:
    if not k > 0.0:
        raise ConfigurationError("incident wavenumber must be positive", code="bad_wavenumber", k=k)
    if not x_i < x_f:
        raise ConfigurationError("x_i must lie below x_f", code="bad_interval", x_i=x_i, x_f=x_f)
    settings = get_settings()
    rtol = settings.stationary_rtol if rtol is None else rtol
    atol = settings.stationary_atol if atol is None else atol
    budget = settings.stationary_max_evaluations if max_evaluations is None else max_evaluations

    energy = 0.5 * k * k / mass
    if energy - v_inner <= 0.0:
        raise EvanescentTransmissionError(
            "energy below the inner potential level",
            energy=energy,
            v_inner=v_inner,
        )
    k_inner = math.sqrt(2.0 * mass * (energy - v_inner))
    two_m = 2.0 * mass

    def segment_rhs(lo: float, hi: float):
        # sample the potential strictly inside the segment
        inner_lo = np.nextafter(lo, hi)
        inner_hi = np.nextafter(hi, lo)

        def rhs(x: float, y: np.ndarray) -> np.ndarray:
            xs = min(max(x, inner_lo), inner_hi)
            return np.array([y[1], two_m * (potential(xs) - energy) * y[0]])

        return rhs

    phase = np.exp(-1j * k_inner * x_i)
    y = np.array([phase, -1j * k_inner * phase], dtype=np.complex128)

    edges = [x_i, *sorted(b for b in breakpoints if x_i < b < x_f), x_f]
    evaluations = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        sol = solve_ivp(segment_rhs(lo, hi), (lo, hi), y, method=method, rtol=rtol, atol=atol)
        evaluations += int(sol.nfev)
        if not sol.success:
            raise IntegrationFailureError(sol.message, segment=[lo, hi], k=k)
        if evaluations > budget:
            raise IntegrationFailureError(
                "evaluation budget exhausted",
                evaluations=evaluations,
                budget=budget,
                k=k,
            )
        y = sol.y[:, -1]

    phi, dphi = complex(y[0]), complex(y[1])
    ik = 1j * k
    A = (ik * phi + dphi) / (2.0 * ik) * np.exp(-ik * x_f)
    B = (ik * phi - dphi) / (2.0 * ik) * np.exp(ik * x_f)
    incoming = k * abs(B) ** 2
    residual = abs(incoming - k * abs(A) ** 2 - k_inner) / incoming
    return ScatteringSolution(
        k=k,
        k_inner=k_inner,
        A=complex(A),
        B=complex(B),
        T=1.0 + 0.0j,
        R=float(abs(A / B) ** 2),
        x_i=x_i,
        x_f=x_f,
        flux_residual=float(residual),
        evaluations=evaluations,
    )


def scalar_continuation(p: PotentialParams) -> Callable[[float], float]:
    """Scalar closure of the continued potential for the ODE right-hand side."""
    v0 = continued_potential(p.x0, p)
    dv0 = casimir_vdw_derivative(p.x0, p)
    curvature = dv0 / (2.0 * p.x0)
    floor = potential_floor(p)
    c4, l, x0 = p.C4, p.l, p.x0

    def potential(x: float) -> float:
        if x > x0:
            return -c4 / (x**3 * (x + l))
        if x < 0.0:
            return floor
        s = x - x0
        return v0 + dv0 * s + curvature * s * s

    return potential


def default_x_f(k: float, p: PotentialParams, mass: float) -> float:
    """Point where |V| falls to 1e-8 E, capped at 2 um."""
    cap = si_to_internal(X_F_CAP_M, Dimension.length)
    threshold = X_F_THRESHOLD * 0.5 * k * k / mass

    def excess(x: float) -> float:
        return abs(casimir_vdw(x, p)) - threshold

    if excess(cap) > 0.0:
        return cap
    if excess(p.x0) <= 0.0:
        return 2.0 * p.x0
    return brentq(excess, p.x0, cap, xtol=1e-6 * p.x0)


def stationary_reflectivity(
    k: float,
    p: PotentialParams,
    x_i: Optional[float] = None,
    x_f: Optional[float] = None,
    *,
    mass: float,
    **options,
) -> ScatteringSolution:
    if not p.is_static:
        logger.debug("stationary oracle ignores the drive (d=%g, omega=%g)", p.d, p.omega)
    x_i = si_to_internal(X_I_DEFAULT_M, Dimension.length) if x_i is None else x_i
    if x_i > 0.0:
        raise ConfigurationError("x_i must lie in the constant branch (x_i <= 0)", code="bad_interval", x_i=x_i)
    x_f = default_x_f(k, p, mass) if x_f is None else x_f
    static = p.model_copy(update={"d": 0.0, "omega": 0.0})
    potential = scalar_continuation(static)
    sol = integrate_scattering(
        k, mass, potential, potential_floor(static), x_i, x_f, breakpoints=(0.0, p.x0), **options
    )
    logger.debug("stationary R=%.9g k=%.6g x0=%.6g evaluations=%d", sol.R, k, p.x0, sol.evaluations)
    return sol


def packet_averaged_reflectivity(
    ks: Sequence[float],
    weights: Sequence[float],
    p: PotentialParams,
    mass: float,
    **options,
) -> float:
    """Oracle reflectivity weighted over a momentum distribution."""
    ks_arr = np.abs(np.asarray(ks, dtype=float))
    w = np.asarray(weights, dtype=float)
    if ks_arr.shape != w.shape or ks_arr.size == 0 or not np.sum(w) > 0.0:
        raise ConfigurationError("momentum samples and weights must match", code="bad_weights")
    values = np.array([stationary_reflectivity(float(k), p, mass=mass, **options).R for k in ks_arr])
    return float(np.sum(w * values) / np.sum(w))


def gaussian_momentum_samples(k_mean: float, sigma_k: float, count: int = 21, span: float = 4.0):
    """Quadrature nodes and weights for a Gaussian momentum density."""
    ks = np.linspace(k_mean - span * sigma_k, k_mean + span * sigma_k, count)
    weights = np.exp(-((ks - k_mean) ** 2) / (2.0 * sigma_k**2))
    return ks, weights / np.sum(weights)


__all__ = [
    "integrate_scattering",
    "scalar_continuation",
    "default_x_f",
    "stationary_reflectivity",
    "packet_averaged_reflectivity",
    "gaussian_momentum_samples",
]
