"""Spatial grid, initial Gaussian packet and the absorbing damping mask."""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from scipy.special import expit

from app.common.errors import ConfigurationError
from app.features.grid_packet.schemas import AbsorberSpec, GridRules, GridSpec, PacketSpec, WaveField
from app.features.potential.schemas import PotentialParams
from app.features.potential.service import potential_floor

logger = logging.getLogger("grid_packet.service")

# f(x_b) = ABSORBER_EDGE_VALUE and |f(0) - 1| <= ABSORBER_EDGE_VALUE**2
ABSORBER_EDGE_VALUE = 1e-8
CONTAINMENT_SIGMAS = 5.0


def mean_wavenumber(s: PacketSpec) -> float:
    return s.mass * s.v_mean


def momentum_width(s: PacketSpec) -> float:
    return s.dv_rel * abs(mean_wavenumber(s))


def position_width(s: PacketSpec) -> float:
    """Minimum-uncertainty width: sigma_x * sigma_k = 1/2."""
    return 1.0 / (2.0 * momentum_width(s))


def gaussian_packet(g: GridSpec, s: PacketSpec) -> WaveField:
    sigma_x = position_width(s)
    lo = g.x_min + CONTAINMENT_SIGMAS * sigma_x
    hi = g.x_max - CONTAINMENT_SIGMAS * sigma_x
    if not (lo < s.x_center < hi):
        raise ConfigurationError(
            "initial packet is not contained in the box",
            code="packet_outside_box",
            x_center=s.x_center,
            sigma_x=sigma_x,
            allowed=[lo, hi],
        )
    x = g.coordinates()
    k_mean = mean_wavenumber(s)
    psi = np.exp(-((x - s.x_center) ** 2) / (4.0 * sigma_x**2) + 1j * k_mean * x)
    psi /= math.sqrt(np.sum(np.abs(psi) ** 2) * g.dx)
    return WaveField(grid=g, psi=psi, t=0.0)


def calibrate_absorber(x_b: float) -> AbsorberSpec:
    """Solve f(x_b) = 1e-8 and |f(0) - 1| = 1e-16 for the logistic mask."""
    if not x_b < 0.0:
        raise ConfigurationError("absorber edge must be negative", code="absorber_edge", x_b=x_b)
    return AbsorberSpec(
        a=(2.0 / 3.0) * x_b,
        sigma=-x_b / (3.0 * math.log(1.0 / ABSORBER_EDGE_VALUE)),
        x_b=x_b,
    )


def damping_mask(g: GridSpec, a_spec: AbsorberSpec) -> np.ndarray:
    return expit((g.coordinates() - a_spec.a) / a_spec.sigma)


def norm(field: WaveField) -> float:
    return field.norm()


def region_norm(field: WaveField, x_lo: float = -math.inf, x_hi: float = math.inf) -> float:
    x = field.grid.coordinates()
    mask = (x > x_lo) & (x <= x_hi)
    return float(np.sum(np.abs(field.psi[mask]) ** 2) * field.grid.dx)


def centroid(field: WaveField) -> float:
    rho = field.density()
    total = float(np.sum(rho))
    if total == 0.0:
        return 0.0
    return float(np.sum(field.grid.coordinates() * rho) / total)


def recommended_grid(
    p: PotentialParams,
    packet: PacketSpec,
    t_final: float,
    x_b: float,
    rules: Optional[GridRules] = None,
) -> GridSpec:
    """Uniform grid from the wavelength, time-step and box-margin rules."""
    rules = rules or GridRules()
    e_in = 0.5 * packet.mass * packet.v_mean**2
    v_floor = abs(potential_floor(p))

    lambda_min = 2.0 * math.pi / math.sqrt(2.0 * packet.mass * (e_in + v_floor))
    dx_max = lambda_min / rules.points_per_wavelength
    dt = rules.dt_factor / max(v_floor, e_in)

    speed = abs(packet.v_mean) * (1.0 + rules.margin_sigmas * packet.dv_rel)
    if not p.is_static:
        # room for the first two gain sidebands
        speed = math.sqrt(speed**2 + 4.0 * p.omega / packet.mass)
    x_max = packet.x_center + rules.margin_sigmas * position_width(packet) + speed * t_final
    x_max = max(x_max, packet.x_center + (CONTAINMENT_SIGMAS + 1.0) * position_width(packet))

    n_points = int(math.ceil((x_max - x_b) / dx_max)) + 1
    if n_points % 2:
        n_points += 1
    grid = GridSpec(x_min=x_b, x_max=x_max, n_points=n_points, dt=dt)
    logger.debug(
        "recommended grid: n=%d dx=%.4g dt=%.4g box=[%.4g, %.4g]",
        grid.n_points, grid.dx, grid.dt, grid.x_min, grid.x_max,
    )
    return grid


__all__ = [
    "mean_wavenumber",
    "momentum_width",
    "position_width",
    "gaussian_packet",
    "calibrate_absorber",
    "damping_mask",
    "norm",
    "region_norm",
    "centroid",
    "recommended_grid",
]
