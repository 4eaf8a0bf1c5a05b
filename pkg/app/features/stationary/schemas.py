from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Dict


@dataclass(frozen=True)
class ScatteringSolution:
    """Plane-wave matching of a stationary solution.

    At x_f: phi = A exp(ikx) + B exp(-ikx); at x_i: phi = T exp(-ik'x).
    """

    k: float
    k_inner: float
    A: complex
    B: complex
    T: complex
    R: float
    x_i: float
    x_f: float
    flux_residual: float
    evaluations: int = 0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for key in ("A", "B", "T"):
            value = data.pop(key)
            data[f"abs_{key}"] = abs(value)
        return data
