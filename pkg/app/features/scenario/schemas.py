"""Scenario file: every quantity carries its unit in the key name."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from app.common.errors import ConfigurationError
from app.features.grid_packet.schemas import AbsorberSpec, GridRules, GridSpec, PacketSpec
from app.features.grid_packet.service import calibrate_absorber, recommended_grid
from app.features.potential.schemas import PotentialParams
from app.features.propagator.schemas import FixedTime, Stationary, StopRule
from app.features.spectral.service import incident_frequency
from app.features.units import constants as C
from app.features.units.schemas import Dimension
from app.features.units.service import si_to_internal

DEFAULT_OMEGA_RATIO = 0.5


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ParticleConfig(_Section):
    mass_u: float = Field(default=C.DEFAULT_MASS_U, gt=0)
    # speed toward the surface
    v_mps: float = Field(default=2.0, gt=0)
    dv_rel: float = Field(default=0.03, gt=0, lt=1)
    x_center_m: float = Field(default=4.5e-6, gt=0)


class SurfaceConfig(_Section):
    C4_eV_A4: float = Field(default=C.DEFAULT_C4_EV_A4, gt=0)
    l_A: float = Field(default=C.DEFAULT_L_ANGSTROM, gt=0)


class X0Range(_Section):
    start_m: float = Field(gt=0)
    stop_m: float = Field(gt=0)
    count: int = Field(ge=1)
    spacing: Literal["linear", "geometric"] = "linear"

    @model_validator(mode="after")
    def _check_order(self) -> "X0Range":
        if self.stop_m < self.start_m:
            raise ValueError("stop_m must not be below start_m")
        return self

    def values(self) -> List[float]:
        if self.count == 1:
            return [self.start_m]
        if self.spacing == "geometric":
            return [float(v) for v in np.geomspace(self.start_m, self.stop_m, self.count)]
        return [float(v) for v in np.linspace(self.start_m, self.stop_m, self.count)]


class RegularizationConfig(_Section):
    x0_m: Optional[List[float]] = Field(default=None, min_length=1)
    x0_range: Optional[X0Range] = None

    @model_validator(mode="after")
    def _one_source(self) -> "RegularizationConfig":
        if self.x0_m is not None and self.x0_range is not None:
            raise ValueError("give either x0_m or x0_range, not both")
        if self.x0_m is not None and any(not v > 0 for v in self.x0_m):
            raise ValueError("x0_m values must be positive")
        return self

    def values(self) -> List[float]:
        if self.x0_range is not None:
            return self.x0_range.values()
        return sorted(self.x0_m or [5e-10])


class DriveConfig(_Section):
    d_m: float = Field(default=4e-9, ge=0)
    omega_rad_s: Optional[float] = Field(default=None, ge=0)
    omega_ratio: Optional[float] = Field(default=None, ge=0)
    omega_ratios: Optional[List[float]] = Field(default=None, min_length=1)

    @model_validator(mode="after")
    def _exclusive(self) -> "DriveConfig":
        given = [n for n in ("omega_rad_s", "omega_ratio", "omega_ratios") if getattr(self, n) is not None]
        if len(given) > 1:
            raise ValueError(f"{' and '.join(given)} are mutually exclusive")
        if self.omega_ratios is not None and any(r < 0 for r in self.omega_ratios):
            raise ValueError("omega_ratios must be non-negative")
        return self

    def ratios(self) -> List[Optional[float]]:
        """Drive settings to run; None means the absolute omega_rad_s."""
        if self.omega_ratios is not None:
            return list(self.omega_ratios)
        if self.omega_rad_s is not None:
            return [None]
        return [self.omega_ratio if self.omega_ratio is not None else DEFAULT_OMEGA_RATIO]


class GridConfig(_Section):
    points_per_wavelength: float = Field(default=20.0, gt=0)
    dt_factor: float = Field(default=0.05, gt=0)
    margin_sigmas: float = Field(default=6.0, gt=0)
    absorber_depth_m: float = Field(default=-3e-6, lt=0)
    dx_m: Optional[float] = Field(default=None, gt=0)
    dt_s: Optional[float] = Field(default=None, gt=0)
    x_max_m: Optional[float] = Field(default=None, gt=0)

    def rules(self) -> GridRules:
        return GridRules(
            points_per_wavelength=self.points_per_wavelength,
            dt_factor=self.dt_factor,
            margin_sigmas=self.margin_sigmas,
        )


class AnalysisConfig(_Section):
    n_min: int = Field(default=-3, le=0)
    n_max: int = Field(default=3, ge=0)
    stop: Literal["fixed_time", "stationary"] = "fixed_time"
    t_final_s: float = Field(default=3.4e-6, gt=0)
    epsilon: float = Field(default=1e-5, gt=0)
    probe_offset_m: float = Field(default=50e-9, gt=0)
    methods: List[Literal["time_dependent", "stationary"]] = Field(
        default_factory=lambda: ["time_dependent", "stationary"], min_length=1
    )
    strategy: Literal["double_geometric", "arithmetic"] = "double_geometric"
    compare_static: bool = False
    velocities_mps: Optional[List[float]] = Field(default=None, min_length=1)
    snapshot_every: Optional[int] = Field(default=None, gt=0)


class StationaryConfig(_Section):
    x_i_m: float = Field(default=-10e-9, le=0)
    x_f_m: Optional[float] = Field(default=None, gt=0)
    rtol: Optional[float] = Field(default=None, gt=0)
    atol: Optional[float] = Field(default=None, gt=0)
    packet_average: bool = False


class OutputConfig(_Section):
    directory: Optional[str] = None
    formats: List[Literal["csv", "json"]] = Field(default_factory=lambda: ["csv", "json"], min_length=1)


@dataclass(frozen=True)
class ResolvedScenario:
    """One simulation point in internal units."""

    x0_m: float
    mass: float
    speed: float
    packet: PacketSpec
    potential: PotentialParams
    grid: GridSpec
    absorber: AbsorberSpec
    stop: StopRule
    omega_in: float
    omega: float
    x_probe: float

    @property
    def k_incident(self) -> float:
        return self.mass * self.speed

    @property
    def driven(self) -> bool:
        return not self.potential.is_static

    def summary(self) -> Dict[str, Any]:
        return {
            "x0_m": self.x0_m,
            "mass": self.mass,
            "k_incident": self.k_incident,
            "omega_in": self.omega_in,
            "omega": self.omega,
            "n_points": self.grid.n_points,
            "dx": self.grid.dx,
            "dt": self.grid.dt,
            "x_min": self.grid.x_min,
            "x_max": self.grid.x_max,
            "stop": self.stop.kind,
        }


class ScenarioConfig(_Section):
    particle: ParticleConfig = Field(default_factory=ParticleConfig)
    surface: SurfaceConfig = Field(default_factory=SurfaceConfig)
    regularization: RegularizationConfig = Field(default_factory=RegularizationConfig)
    drive: DriveConfig = Field(default_factory=DriveConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    stationary: StationaryConfig = Field(default_factory=StationaryConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @classmethod
    def from_json(cls, text: str) -> "ScenarioConfig":
        try:
            return cls.model_validate_json(text)
        except ValidationError as exc:
            raise ConfigurationError(
                "invalid scenario configuration",
                code="invalid_config",
                field_errors=_field_errors(exc),
            ) from None

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "ScenarioConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise ConfigurationError(
                "invalid scenario configuration",
                code="invalid_config",
                field_errors=_field_errors(exc),
            ) from None

    @classmethod
    def from_file(cls, path: str | Path) -> "ScenarioConfig":
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"cannot read config {p}: {exc}", code="config_unreadable") from None
        return cls.from_json(text)

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    def x0_values_m(self) -> List[float]:
        return self.regularization.values()

    def with_velocity(self, v_mps: float) -> "ScenarioConfig":
        return self.model_copy(update={"particle": self.particle.model_copy(update={"v_mps": float(v_mps)})})

    def resolve(
        self,
        x0_m: float,
        *,
        driven: bool = False,
        omega_ratio: Optional[float] = None,
    ) -> ResolvedScenario:
        """Convert to internal units and derive grid, absorber and stop rule.

        ``omega_ratio`` overrides the drive section; with ``driven=False`` the
        drive is switched off.
        """
        mass = si_to_internal(self.particle.mass_u, Dimension.mass, "u")
        speed = si_to_internal(self.particle.v_mps, Dimension.velocity)
        omega_in = incident_frequency(mass, speed)

        omega = 0.0
        d = 0.0
        if driven:
            ratio = omega_ratio if omega_ratio is not None else self.drive.ratios()[0]
            if ratio is None:
                omega = si_to_internal(self.drive.omega_rad_s or 0.0, Dimension.frequency)
            else:
                omega = ratio * omega_in
            d = si_to_internal(self.drive.d_m, Dimension.length)

        potential = PotentialParams(
            C4=si_to_internal(self.surface.C4_eV_A4, Dimension.c4, "eV*angstrom^4"),
            l=si_to_internal(self.surface.l_A, Dimension.length, "angstrom"),
            x0=si_to_internal(x0_m, Dimension.length),
            d=d,
            omega=omega,
        )
        packet = PacketSpec(
            x_center=si_to_internal(self.particle.x_center_m, Dimension.length),
            v_mean=-speed,
            dv_rel=self.particle.dv_rel,
            mass=mass,
        )
        t_final = si_to_internal(self.analysis.t_final_s, Dimension.time)
        x_b = si_to_internal(self.grid.absorber_depth_m, Dimension.length)
        grid = self._grid(potential, packet, t_final, x_b)
        x_probe = potential.x0 + si_to_internal(self.analysis.probe_offset_m, Dimension.length)

        stop: StopRule
        if self.analysis.stop == "stationary":
            stop = Stationary(epsilon=self.analysis.epsilon, x_probe=x_probe)
        else:
            stop = FixedTime(t_final=t_final)

        return ResolvedScenario(
            x0_m=x0_m,
            mass=mass,
            speed=speed,
            packet=packet,
            potential=potential,
            grid=grid,
            absorber=calibrate_absorber(x_b),
            stop=stop,
            omega_in=omega_in,
            omega=omega,
            x_probe=x_probe,
        )

    def _grid(self, potential: PotentialParams, packet: PacketSpec, t_final: float, x_b: float) -> GridSpec:
        base = recommended_grid(potential, packet, t_final, x_b, self.grid.rules())
        g = self.grid
        if g.dx_m is None and g.dt_s is None and g.x_max_m is None:
            return base
        x_max = si_to_internal(g.x_max_m, Dimension.length) if g.x_max_m is not None else base.x_max
        dt = si_to_internal(g.dt_s, Dimension.time) if g.dt_s is not None else base.dt
        if g.dx_m is not None:
            dx = si_to_internal(g.dx_m, Dimension.length)
            n_points = int(math.ceil((x_max - x_b) / dx)) + 1
        else:
            n_points = int(math.ceil((x_max - x_b) / base.dx)) + 1
        n_points += n_points % 2
        return GridSpec(x_min=x_b, x_max=x_max, n_points=n_points, dt=dt)


def _field_errors(exc: ValidationError) -> List[Dict[str, str]]:
    return [
        {"loc": ".".join(str(part) for part in err.get("loc", ())), "msg": err.get("msg", "")}
        for err in exc.errors()
    ]


__all__ = [
    "ParticleConfig",
    "SurfaceConfig",
    "X0Range",
    "RegularizationConfig",
    "DriveConfig",
    "GridConfig",
    "AnalysisConfig",
    "StationaryConfig",
    "OutputConfig",
    "ScenarioConfig",
    "ResolvedScenario",
]
