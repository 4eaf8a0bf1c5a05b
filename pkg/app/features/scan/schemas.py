from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

import numpy as np

from app.features.spectral.schemas import SidebandReport

ScanValue = Union[float, SidebandReport]


class ScanMethod:
    TIME_DEPENDENT = "time_dependent"
    STATIONARY = "stationary"


@dataclass
class ScanPoint:
    x0_m: float
    value: Optional[ScanValue] = None
    error: Optional[BaseException] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    def scalar(self, order: Optional[int] = None) -> float:
        if self.value is None:
            return float("nan")
        if isinstance(self.value, SidebandReport):
            return self.value.R_tot if order is None else self.value.order(order)
        return float(self.value)


@dataclass
class ReflectivityScan:
    """Reflectivity against x0, sorted ascending in x0 (meters)."""

    points: List[ScanPoint]
    method: str = ScanMethod.TIME_DEPENDENT
    # positions in ``points``; failed points are skipped when locating maxima
    maxima_indices: List[int] = field(default_factory=list)
    extrapolated: Optional[float] = None
    per_order: Dict[int, float] = field(default_factory=dict)
    fallback_orders: List[int] = field(default_factory=list)

    def x0(self) -> np.ndarray:
        return np.array([pt.x0_m for pt in self.points], dtype=float)

    def values(self, order: Optional[int] = None) -> np.ndarray:
        return np.array([pt.scalar(order) for pt in self.points], dtype=float)

    def succeeded(self) -> "ReflectivityScan":
        return ReflectivityScan(points=[pt for pt in self.points if not pt.failed], method=self.method)

    @property
    def driven(self) -> bool:
        return any(isinstance(pt.value, SidebandReport) for pt in self.points)

    def orders(self) -> List[int]:
        found: set[int] = set()
        for pt in self.points:
            if isinstance(pt.value, SidebandReport):
                found.update(pt.value.orders)
        return sorted(found)


@dataclass
class VelocityRow:
    v_mps: float
    R_m1: Optional[float] = None
    R_0: Optional[float] = None
    R_p1: Optional[float] = None
    R_tot: Optional[float] = None
    R_static: Optional[float] = None
    fallback_orders: List[int] = field(default_factory=list)
    error: Optional[str] = None
