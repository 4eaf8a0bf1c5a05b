from __future__ import annotations

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict


class Dimension(str, Enum):
    length = "length"
    time = "time"
    velocity = "velocity"
    mass = "mass"
    energy = "energy"
    frequency = "frequency"  # angular, rad/s
    c4 = "c4"  # energy * length^4


class PhysicalQuantity(BaseModel):
    """A value tagged with its dimension and (optionally) a lab unit.

    ``unit`` defaults to the SI unit of the dimension.
    """

    model_config = ConfigDict(frozen=True)

    value: float
    dimension: str
    unit: Optional[str] = None
