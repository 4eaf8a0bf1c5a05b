from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    x_min: float
    x_max: float
    n_points: int = Field(ge=4)
    dt: float = Field(gt=0)

    @model_validator(mode="after")
    def _check_box(self) -> "GridSpec":
        if not (self.x_min < 0.0 < self.x_max):
            raise ValueError("grid must satisfy x_min < 0 < x_max")
        if self.n_points % 2:
            raise ValueError("n_points must be even")
        return self

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def coordinates(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


class PacketSpec(BaseModel):
    """Initial Gaussian packet; the sign of v_mean is the direction of travel."""

    model_config = ConfigDict(frozen=True)

    x_center: float
    v_mean: float
    dv_rel: float = Field(gt=0, lt=1)
    mass: float = Field(gt=0)

    @model_validator(mode="after")
    def _check_velocity(self) -> "PacketSpec":
        if self.v_mean == 0.0:
            raise ValueError("v_mean must be non-zero")
        return self


class AbsorberSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    sigma: float = Field(gt=0)
    x_b: float

    @model_validator(mode="after")
    def _check_order(self) -> "AbsorberSpec":
        if not (self.x_b < self.a < 0.0):
            raise ValueError("absorber must satisfy x_b < a < 0")
        return self


class GridRules(BaseModel):
    """Discretisation rules used to derive a GridSpec from the physics."""

    model_config = ConfigDict(frozen=True)

    points_per_wavelength: float = Field(default=20.0, gt=0)
    dt_factor: float = Field(default=0.05, gt=0)
    margin_sigmas: float = Field(default=6.0, gt=0)


@dataclass
class WaveField:
    grid: GridSpec
    psi: np.ndarray
    t: float = 0.0

    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2

    def norm(self) -> float:
        return float(np.sum(self.density()) * self.grid.dx)

    def copy(self) -> "WaveField":
        return replace(self, psi=self.psi.copy())
