"""Momentum-space analysis of final wavefields.

psi(k) = dx / sqrt(2 pi) * sum_j psi(x_j) exp(-i k x_j), which makes the
discrete Parseval sum exact.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
import pandas as pd
from scipy import fft as sfft

from app.common.errors import ConfigurationError, TransformUndefinedError
from app.features.grid_packet.schemas import GridSpec, WaveField
from app.features.spectral.schemas import MomentumSpectrum, SidebandReport, ZDistribution
from app.features.units.schemas import Dimension
from app.features.units.service import FACTORS

logger = logging.getLogger("spectral.service")

PEAK_FLOOR = 1e-12
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def momentum_spectrum(field: WaveField) -> MomentumSpectrum:
    g = field.grid
    n, dx = g.n_points, g.dx
    k = 2.0 * math.pi * sfft.fftfreq(n, d=dx)
    amp = sfft.fft(field.psi) * (dx / _SQRT_2PI) * np.exp(-1j * k * g.x_min)
    k = sfft.fftshift(k)
    amp = sfft.fftshift(amp)
    return MomentumSpectrum(
        k=k,
        amplitude=amp,
        density=amp.real**2 + amp.imag**2,
        dk=2.0 * math.pi / (n * dx),
        x_min=g.x_min,
    )


def inverse_field(spec: MomentumSpectrum, grid: GridSpec, t: float = 0.0) -> WaveField:
    k = sfft.ifftshift(spec.k)
    amp = sfft.ifftshift(spec.amplitude) * np.exp(1j * k * grid.x_min)
    psi = sfft.ifft(amp) * (_SQRT_2PI / grid.dx)
    return WaveField(grid=grid, psi=psi, t=t)


def reflectivity(spec: MomentumSpectrum, k_lo: float, k_hi: float = math.inf) -> float:
    """Probability in the half-open momentum window [k_lo, k_hi)."""
    if k_lo < 0.0 or not k_lo < k_hi:
        raise ConfigurationError(
            "reflectivity window must satisfy 0 <= k_lo < k_hi",
            code="bad_interval",
            k_lo=k_lo,
            k_hi=k_hi,
        )
    sel = (spec.k >= k_lo) & (spec.k < k_hi)
    if not np.any(sel):
        logger.warning("reflectivity window [%.6g, %.6g) holds no samples", k_lo, k_hi)
        return 0.0
    return float(np.sum(spec.density[sel]) * spec.dk)


def reflected_reflectivity(spec: MomentumSpectrum) -> float:
    # the grid contains k = 0 exactly; half a bin excludes it
    return reflectivity(spec, 0.5 * spec.dk)


def incident_frequency(mass: float, v: float) -> float:
    return 0.5 * mass * v * v


def z_transform(spec: MomentumSpectrum, omega_in: float, omega: float, mass: float) -> ZDistribution:
    if not omega > 0.0:
        raise TransformUndefinedError(
            "z-transform needs a drive frequency > 0",
            omega=omega,
        )
    sel = spec.k > 0.0
    k = spec.k[sel]
    z = (k * k / (2.0 * mass) - omega_in) / omega
    rho = spec.density[sel] * (mass * omega / k)
    dz = k * spec.dk / (mass * omega)
    return ZDistribution(z=z, rho=rho, dz=dz, omega_in=omega_in, omega=omega)


def _parabolic_peak(z: np.ndarray, rho: np.ndarray, i: int) -> float:
    if i <= 0 or i >= len(z) - 1:
        return float(z[i])
    z0, z1, z2 = z[i - 1], z[i], z[i + 1]
    r0, r1, r2 = rho[i - 1], rho[i], rho[i + 1]
    denom = (z0 - z1) * (z0 - z2) * (z1 - z2)
    if denom == 0.0:
        return float(z1)
    a = (z2 * (r1 - r0) + z1 * (r0 - r2) + z0 * (r2 - r1)) / denom
    b = (z2 * z2 * (r0 - r1) + z1 * z1 * (r2 - r0) + z0 * z0 * (r1 - r2)) / denom
    if a >= 0.0:
        return float(z1)
    return float(min(max(-b / (2.0 * a), z0), z2))


def sideband_decompose(zd: ZDistribution, n_min: int, n_max: int) -> SidebandReport:
    if not n_min <= 0 <= n_max:
        raise ConfigurationError(
            "sideband range must contain order 0",
            code="bad_order_range",
            n_min=n_min,
            n_max=n_max,
        )
    mass = zd.rho * zd.dz
    report = SidebandReport()
    for n in range(n_min, n_max + 1):
        window = (zd.z >= n - 0.5) & (zd.z < n + 0.5)
        r_n = float(np.sum(mass[window]))
        report.orders[n] = r_n
        if r_n > PEAK_FLOOR:
            idx = np.nonzero(window)[0]
            i = int(idx[np.argmax(zd.rho[idx])])
            report.peak_z[n] = _parabolic_peak(zd.z, zd.rho, i)
    report.R_tot = float(sum(report.orders.values()))
    report.unassigned = max(0.0, zd.total() - report.R_tot)
    return report


def momentum_table(spec: MomentumSpectrum, positive_only: bool = False) -> pd.DataFrame:
    a0 = FACTORS[Dimension.length]
    sel = spec.k > 0.0 if positive_only else slice(None)
    return pd.DataFrame({"k_per_m": spec.k[sel] / a0, "rho_k_m": spec.density[sel] * a0})


def z_table(zd: ZDistribution) -> pd.DataFrame:
    return pd.DataFrame({"z": zd.z, "rho_z": zd.rho})


def coordinate_table(field: WaveField, x_lo: Optional[float] = None) -> pd.DataFrame:
    a0 = FACTORS[Dimension.length]
    x = field.grid.coordinates()
    rho = field.density()
    if x_lo is not None:
        keep = x > x_lo
        x, rho = x[keep], rho[keep]
    return pd.DataFrame({"x_m": x * a0, "rho_x_per_m": rho / a0})


__all__ = [
    "momentum_spectrum",
    "inverse_field",
    "reflectivity",
    "reflected_reflectivity",
    "incident_frequency",
    "z_transform",
    "sideband_decompose",
    "momentum_table",
    "z_table",
    "coordinate_table",
]
