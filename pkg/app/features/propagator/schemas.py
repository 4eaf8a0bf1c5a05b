from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.features.grid_packet.schemas import WaveField


@dataclass
class TridiagonalOperator:
    """H = -(1/2m) D2 + diag(V) on the grid, Dirichlet outside the box."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray

    def apply(self, psi: np.ndarray) -> np.ndarray:
        out = self.diag * psi
        out[1:] += self.lower * psi[:-1]
        out[:-1] += self.upper * psi[1:]
        return out


class FixedTime(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["fixed_time"] = "fixed_time"
    t_final: float = Field(gt=0)


class Stationary(BaseModel):
    """Stop once the reflected-region norm settles.

    ``window_steps`` defaults to one drive period (or 1000 steps when
    static); ``x_probe`` defaults to x0 + 50 nm.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["stationary"] = "stationary"
    epsilon: float = Field(default=1e-5, gt=0)
    window_steps: Optional[int] = Field(default=None, gt=0)
    x_probe: Optional[float] = None
    max_steps: Optional[int] = Field(default=None, gt=0)


StopRule = Union[FixedTime, Stationary]


@dataclass
class PropagationResult:
    final: WaveField
    reflected_norm_history: List[Tuple[float, float]] = field(default_factory=list)
    absorbed_history: List[Tuple[float, float]] = field(default_factory=list)
    absorbed_norm: float = 0.0
    steps: int = 0
    stopped_by: str = ""
