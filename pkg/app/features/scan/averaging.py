"""Averaging strategies that turn an oscillating R(x0) series into one value."""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy.stats import gmean

from app.common.errors import ConfigurationError

AveragingHandler = Callable[[np.ndarray, Sequence[int]], float]


class AveragingMode:
    DOUBLE_GEOMETRIC = "double_geometric"
    ARITHMETIC = "arithmetic"


def _intervals(maxima: Sequence[int]):
    return zip(maxima[:-1], maxima[1:])


def _double_geometric(values: np.ndarray, maxima: Sequence[int]) -> float:
    per_interval = []
    for lo, hi in _intervals(maxima):
        inner = values[lo + 1 : hi]
        floor = float(np.min(inner)) if inner.size else float(values[lo])
        per_interval.append(gmean([values[lo], floor]))
    return float(gmean(per_interval))


def _arithmetic(values: np.ndarray, maxima: Sequence[int]) -> float:
    per_interval = [float(np.mean(values[lo : hi + 1])) for lo, hi in _intervals(maxima)]
    return float(np.mean(per_interval))


class AveragingStrategy:
    def __init__(self, mode: str, handler: AveragingHandler, *, priority: int = 100) -> None:
        self.mode = mode
        self._handler = handler
        self.priority = priority

    def evaluate(self, values: np.ndarray, maxima: Sequence[int]) -> float:
        return self._handler(np.asarray(values, dtype=float), list(maxima))


class AveragingRegistry:
    def __init__(self) -> None:
        self._strategies: Dict[str, AveragingStrategy] = {}

    def register(self, strategy: AveragingStrategy) -> None:
        self._strategies[strategy.mode] = strategy

    def strategy(self, mode: Optional[str]) -> AveragingStrategy:
        strat = self._strategies.get(mode or AveragingMode.DOUBLE_GEOMETRIC)
        if strat is None:
            raise ConfigurationError(
                f"unknown averaging strategy {mode!r}",
                code="unknown_strategy",
                available=self.list_modes(),
            )
        return strat

    def list_modes(self) -> List[str]:
        return [s.mode for s in sorted(self._strategies.values(), key=lambda s: s.priority)]


registry = AveragingRegistry()
registry.register(AveragingStrategy(AveragingMode.DOUBLE_GEOMETRIC, _double_geometric, priority=0))
registry.register(AveragingStrategy(AveragingMode.ARITHMETIC, _arithmetic, priority=10))


def supported_strategies() -> List[str]:
    return registry.list_modes()


__all__ = ["AveragingMode", "AveragingStrategy", "AveragingRegistry", "registry", "supported_strategies"]
