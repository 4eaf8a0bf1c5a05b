from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

import numpy as np
from pydantic import BaseModel, Field


@dataclass
class MomentumSpectrum:
    """psi(k) on the FFT-conjugate grid, sorted ascending in k."""

    k: np.ndarray
    amplitude: np.ndarray
    density: np.ndarray
    dk: float
    x_min: float

    def total(self) -> float:
        return float(np.sum(self.density) * self.dk)


@dataclass
class ZDistribution:
    """rho(z) for the k > 0 samples; ``dz`` are the per-sample Jacobian weights."""

    z: np.ndarray
    rho: np.ndarray
    dz: np.ndarray
    omega_in: float
    omega: float

    def total(self) -> float:
        return float(np.sum(self.rho * self.dz))


class SidebandReport(BaseModel):
    orders: Dict[int, float] = Field(default_factory=dict)
    peak_z: Dict[int, float] = Field(default_factory=dict)
    R_tot: float = 0.0
    # z-mass outside the reported windows
    unassigned: float = 0.0

    def order(self, n: int) -> float:
        return self.orders.get(n, 0.0)
