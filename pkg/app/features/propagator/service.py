"""Crank-Nicolson propagation with a three-point Hamiltonian.

Each step solves (1 + i dt/2 H) psi_new = (1 - i dt/2 H) psi_old by
tridiagonal elimination and then multiplies by the damping mask.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from app.Core.config import get_settings
from app.common.errors import NumericalBreakdownError, PropagationTimeoutError, QReflError
from app.features.grid_packet.schemas import AbsorberSpec, GridSpec, WaveField
from app.features.grid_packet.service import damping_mask
from app.features.potential.schemas import PotentialParams
from app.features.potential.service import oscillating_potential
from app.features.propagator.schemas import (
    FixedTime,
    PropagationResult,
    Stationary,
    StopRule,
    TridiagonalOperator,
)
from app.features.propagator.snapshots import SnapshotWriter
from app.features.propagator.tridiagonal import is_diagonally_dominant, thomas_solve
from app.features.units.schemas import Dimension
from app.features.units.service import si_to_internal

logger = logging.getLogger("propagator.service")

PROBE_OFFSET_M = 50e-9
STATIC_WINDOW_STEPS = 1000
HISTORY_POINTS = 200


def build_hamiltonian(g: GridSpec, potential_values: np.ndarray, mass: float) -> TridiagonalOperator:
    v = np.asarray(potential_values, dtype=float)
    if v.shape != (g.n_points,):
        raise QReflError(
            f"potential has shape {v.shape}, grid has {g.n_points} points",
            code="hamiltonian_shape_mismatch",
        )
    kin = 1.0 / (2.0 * mass * g.dx**2)
    off = np.full(g.n_points - 1, -kin, dtype=np.complex128)
    diag = (2.0 * kin + v).astype(np.complex128)
    return TridiagonalOperator(lower=off, diag=diag, upper=off.copy())


def crank_nicolson_operators(H: TridiagonalOperator, dt: float):
    """Left-hand matrix 1 + i dt/2 H as (lower, diag, upper)."""
    tau = 0.5 * dt
    return 1j * tau * H.lower, 1.0 + 1j * tau * H.diag, 1j * tau * H.upper


def _solve(H: TridiagonalOperator, lhs, psi: np.ndarray, dt: float, step: int) -> np.ndarray:
    rhs = psi - 1j * (0.5 * dt) * H.apply(psi)
    out, status = thomas_solve(lhs[0], lhs[1], lhs[2], rhs)
    if status >= 0:
        raise NumericalBreakdownError(
            f"zero pivot at row {status} in step {step}", code="zero_pivot", step=step, row=int(status)
        )
    return out


def cn_step(field: WaveField, H: TridiagonalOperator, dt: float, *, step: int = 0) -> WaveField:
    lhs = crank_nicolson_operators(H, dt)
    psi = _solve(H, lhs, field.psi, dt, step)
    return WaveField(grid=field.grid, psi=psi, t=field.t + dt)


def _check_dominance(lhs, t: float) -> None:
    if not is_diagonally_dominant(*lhs):
        raise NumericalBreakdownError(
            "Crank-Nicolson matrix is not diagonally dominant; reduce dt",
            code="cn_not_dominant",
            t=t,
        )


def _default_probe(p: PotentialParams) -> float:
    return p.x0 + si_to_internal(PROBE_OFFSET_M, Dimension.length)


def propagate(
    initial: WaveField,
    p: PotentialParams,
    g: GridSpec,
    a: Optional[AbsorberSpec],
    stop: StopRule,
    *,
    mass: float,
    x_probe: Optional[float] = None,
    snapshots: Optional[SnapshotWriter] = None,
) -> PropagationResult:
    dt = g.dt
    x = g.coordinates()
    dx = g.dx
    t0 = initial.t
    psi = initial.psi.astype(np.complex128, copy=True)

    if isinstance(stop, Stationary):
        probe = stop.x_probe if stop.x_probe is not None else (x_probe if x_probe is not None else _default_probe(p))
        if stop.window_steps:
            window = stop.window_steps
        elif p.is_static:
            window = STATIC_WINDOW_STEPS
        else:
            window = max(1, int(round(2.0 * math.pi / p.omega / dt)))
        max_steps = stop.max_steps or get_settings().max_steps
        n_steps = max_steps
    else:
        probe = x_probe if x_probe is not None else _default_probe(p)
        n_steps = max(1, int(round(stop.t_final / dt)))
        window = max(1, n_steps // HISTORY_POINTS)

    if a is not None:
        mask = damping_mask(g, a)
        lossy = np.nonzero(mask < 1.0)[0]
        mask_lossy = mask[lossy]
        loss_weight = 1.0 - mask_lossy**2
    else:
        lossy = np.empty(0, dtype=np.intp)
        mask_lossy = loss_weight = np.empty(0)
    reflected_region = x > probe

    H = build_hamiltonian(g, oscillating_potential(x, t0 + 0.5 * dt, p), mass)
    lhs = crank_nicolson_operators(H, dt)
    _check_dominance(lhs, t0)
    kin_diag = H.diag.real - oscillating_potential(x, t0 + 0.5 * dt, p)

    logger.info(
        "propagate: n=%d dx=%.4g dt=%.4g %s stop=%s window=%d",
        g.n_points, dx, dt, "static" if p.is_static else "driven", stop.kind, window,
    )

    result = PropagationResult(final=initial)
    absorbed = 0.0
    prev_reflected: Optional[float] = None
    prev_centroid: Optional[float] = None
    t = t0

    for step in range(1, n_steps + 1):
        if not p.is_static:
            v = oscillating_potential(x, t0 + (step - 0.5) * dt, p)
            H.diag = (kin_diag + v).astype(np.complex128)
            lhs = (lhs[0], 1.0 + 1j * (0.5 * dt) * H.diag, lhs[2])

        psi = _solve(H, lhs, psi, dt, step)
        t = t0 + step * dt

        if lossy.size:
            amp = psi[lossy]
            absorbed += dx * float(np.sum(loss_weight * (amp.real**2 + amp.imag**2)))
            psi[lossy] = amp * mask_lossy

        if snapshots is not None:
            snapshots.maybe_write(step, WaveField(grid=g, psi=psi, t=t))

        if step % window and step != n_steps:
            continue

        rho = psi.real**2 + psi.imag**2
        reflected = float(np.sum(rho[reflected_region]) * dx)
        result.reflected_norm_history.append((t, reflected))
        result.absorbed_history.append((t, absorbed))
        logger.debug("step=%d t=%.6g reflected=%.6g absorbed=%.6g", step, t, reflected, absorbed)

        if isinstance(stop, Stationary):
            total = float(np.sum(rho))
            center = float(np.sum(x * rho) / total) if total > 0 else 0.0
            settled = (
                prev_reflected is not None
                and reflected > 0.0
                and abs(reflected - prev_reflected) < stop.epsilon * reflected
            )
            outward = prev_centroid is not None and center > probe and center > prev_centroid
            prev_reflected, prev_centroid = reflected, center
            if settled and outward:
                result.stopped_by = "stationary"
                break
    else:
        if isinstance(stop, Stationary):
            result.final = WaveField(grid=g, psi=psi, t=t)
            result.absorbed_norm = absorbed
            result.steps = n_steps
            result.stopped_by = "timeout"
            raise PropagationTimeoutError(
                f"reflected norm not stationary after {n_steps} steps",
                partial=result,
                steps=n_steps,
            )
        result.stopped_by = "fixed_time"

    result.final = WaveField(grid=g, psi=psi, t=t)
    result.absorbed_norm = absorbed
    result.steps = step
    logger.info("propagate done: steps=%d t=%.6g absorbed=%.6g (%s)", step, t, absorbed, result.stopped_by)
    return result


__all__ = [
    "build_hamiltonian",
    "crank_nicolson_operators",
    "cn_step",
    "propagate",
    "FixedTime",
    "Stationary",
]
