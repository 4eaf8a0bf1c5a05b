"""One independent simulation point: time-dependent or stationary."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from app.features.grid_packet.service import gaussian_packet, momentum_width
from app.features.propagator.schemas import PropagationResult
from app.features.propagator.service import propagate
from app.features.propagator.snapshots import SnapshotWriter
from app.features.scenario.schemas import ResolvedScenario, ScenarioConfig
from app.features.spectral.schemas import MomentumSpectrum, SidebandReport, ZDistribution
from app.features.spectral.service import (
    momentum_spectrum,
    reflected_reflectivity,
    sideband_decompose,
    z_transform,
)
from app.features.stationary.schemas import ScatteringSolution
from app.features.stationary.service import (
    gaussian_momentum_samples,
    packet_averaged_reflectivity,
    stationary_reflectivity,
)
from app.features.units.schemas import Dimension
from app.features.units.service import si_to_internal

logger = logging.getLogger("scenario.pipeline")

TIME_DEPENDENT = "time_dependent"
STATIONARY = "stationary"


@dataclass
class PointResult:
    x0_m: float
    method: str
    R: float
    report: Optional[SidebandReport] = None
    spectrum: Optional[MomentumSpectrum] = None
    z: Optional[ZDistribution] = None
    propagation: Optional[PropagationResult] = None
    solution: Optional[ScatteringSolution] = None


def run_time_dependent(
    res: ResolvedScenario,
    *,
    n_min: int = -3,
    n_max: int = 3,
    snapshots: Optional[SnapshotWriter] = None,
) -> PointResult:
    field = gaussian_packet(res.grid, res.packet)
    prop = propagate(
        field,
        res.potential,
        res.grid,
        res.absorber,
        res.stop,
        mass=res.mass,
        x_probe=res.x_probe,
        snapshots=snapshots,
    )
    spectrum = momentum_spectrum(prop.final)
    R = reflected_reflectivity(spectrum)
    out = PointResult(x0_m=res.x0_m, method=TIME_DEPENDENT, R=R, spectrum=spectrum, propagation=prop)
    if res.omega > 0.0:
        out.z = z_transform(spectrum, res.omega_in, res.omega, res.mass)
        out.report = sideband_decompose(out.z, n_min, n_max)
    logger.info("x0=%.6g m time-dependent R=%.9g (%s)", res.x0_m, R, prop.stopped_by)
    return out


def run_stationary(res: ResolvedScenario, config: ScenarioConfig) -> PointResult:
    st = config.stationary
    options = {"rtol": st.rtol, "atol": st.atol}
    x_i = si_to_internal(st.x_i_m, Dimension.length)
    x_f = si_to_internal(st.x_f_m, Dimension.length) if st.x_f_m is not None else None
    if st.packet_average:
        ks, weights = gaussian_momentum_samples(res.k_incident, momentum_width(res.packet))
        R = packet_averaged_reflectivity(ks, weights, res.potential, res.mass, x_i=x_i, x_f=x_f, **options)
        return PointResult(x0_m=res.x0_m, method=STATIONARY, R=R)
    sol = stationary_reflectivity(res.k_incident, res.potential, x_i, x_f, mass=res.mass, **options)
    logger.info("x0=%.6g m stationary R=%.9g", res.x0_m, sol.R)
    return PointResult(x0_m=res.x0_m, method=STATIONARY, R=sol.R, solution=sol)


def run_point(
    config: ScenarioConfig,
    x0_m: float,
    method: str = TIME_DEPENDENT,
    *,
    driven: bool = False,
    omega_ratio: Optional[float] = None,
    snapshots: Optional[SnapshotWriter] = None,
) -> PointResult:
    res = config.resolve(x0_m, driven=driven, omega_ratio=omega_ratio)
    if method == STATIONARY:
        return run_stationary(res, config)
    return run_time_dependent(
        res,
        n_min=config.analysis.n_min,
        n_max=config.analysis.n_max,
        snapshots=snapshots,
    )


__all__ = ["PointResult", "run_time_dependent", "run_stationary", "run_point", "TIME_DEPENDENT", "STATIONARY"]
