"""x0 scans, maxima detection and extrapolation of the physical reflectivity."""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from app.Core.config import get_settings
from app.common.errors import ConfigurationError, ExtrapolationUnavailableError, QReflError, ScanPointError
from app.features.scan.averaging import AveragingMode, registry
from app.features.scan.schemas import ReflectivityScan, ScanMethod, ScanPoint, VelocityRow
from app.features.scenario.pipeline import run_point
from app.features.scenario.schemas import ScenarioConfig

logger = logging.getLogger("scan.service")

SeriesLike = Union[ReflectivityScan, Sequence[float], np.ndarray]


def _evaluate(config: ScenarioConfig, x0_m: float, method: str, driven: bool) -> ScanPoint:
    try:
        result = run_point(config, x0_m, method, driven=driven)
    except Exception as exc:
        return ScanPoint(x0_m=x0_m, error=exc)
    value = result.report if driven and result.report is not None else result.R
    return ScanPoint(x0_m=x0_m, value=value)


def scan_x0(
    config: ScenarioConfig,
    x0_values: Sequence[float],
    method: str = ScanMethod.TIME_DEPENDENT,
    *,
    driven: bool = False,
    jobs: Optional[int] = None,
    fail_fast: bool = True,
) -> ReflectivityScan:
    """Evaluate every x0 (meters) independently; output is sorted by x0."""
    if method not in (ScanMethod.TIME_DEPENDENT, ScanMethod.STATIONARY):
        raise ConfigurationError(f"unknown scan method {method!r}", code="unknown_method")
    if driven and method == ScanMethod.STATIONARY:
        raise ConfigurationError("the stationary oracle has no driven variant", code="unknown_method")
    xs = [float(x) for x in x0_values]
    if not xs:
        raise ConfigurationError("x0 list is empty", code="empty_scan")
    if any(x <= 0.0 for x in xs):
        raise ConfigurationError("x0 values must be positive", code="bad_x0", x0=[x for x in xs if x <= 0.0])

    n_jobs = jobs or get_settings().jobs
    logger.info("scan_x0: %d points method=%s driven=%s jobs=%d", len(xs), method, driven, n_jobs)
    points: List[ScanPoint] = Parallel(n_jobs=min(n_jobs, len(xs)))(
        delayed(_evaluate)(config, x0, method, driven) for x0 in xs
    )
    points.sort(key=lambda pt: pt.x0_m)
    for pt in points:
        if pt.failed:
            logger.warning("x0=%.6g m failed: %s", pt.x0_m, pt.error)
        else:
            logger.info("x0=%.6g m R=%.9g", pt.x0_m, pt.scalar())

    if fail_fast:
        for pt in points:
            if pt.failed:
                raise ScanPointError(pt.x0_m, pt.error)

    scan = ReflectivityScan(points=points, method=method)
    # maxima are found on the succeeded series but stored as rows of scan.points
    rows = [i for i, pt in enumerate(points) if not pt.failed]
    if len(rows) >= 3:
        scan.maxima_indices = [rows[i] for i in find_local_maxima(scan.succeeded())]
    return scan


def find_local_maxima(scan: SeriesLike, order: Optional[int] = None) -> List[int]:
    """Strict interior maxima; a plateau counts once, at its leftmost index."""
    values = scan.values(order) if isinstance(scan, ReflectivityScan) else np.asarray(scan, dtype=float)
    n = len(values)
    found: List[int] = []
    i = 1
    while i < n - 1:
        if values[i] > values[i - 1]:
            j = i
            while j + 1 < n and values[j + 1] == values[i]:
                j += 1
            if j < n - 1 and values[j + 1] < values[i]:
                found.append(i)
            i = j + 1
        else:
            i += 1
    return found


def extrapolate(
    scan: SeriesLike,
    strategy: Optional[str] = None,
    *,
    order: Optional[int] = None,
    maxima: Optional[Sequence[int]] = None,
) -> float:
    if isinstance(scan, ReflectivityScan):
        values = scan.succeeded().values(order)
    else:
        values = np.asarray(scan, dtype=float)
    peaks = list(maxima) if maxima is not None else find_local_maxima(values)
    if len(peaks) < 2:
        raise ExtrapolationUnavailableError(
            "at least two local maxima are needed",
            maxima=len(peaks),
            points=len(values),
            order=order,
        )
    return registry.strategy(strategy).evaluate(values, peaks)


def double_geometric_average(scan: SeriesLike, *, maxima: Optional[Sequence[int]] = None) -> float:
    return extrapolate(scan, AveragingMode.DOUBLE_GEOMETRIC, maxima=maxima)


def extrapolate_orders(scan: ReflectivityScan, strategy: Optional[str] = None) -> Tuple[Dict[int, float], List[int]]:
    """Extrapolate each sideband order on its own; orders without two maxima use the series mean."""
    good = scan.succeeded()
    per_order: Dict[int, float] = {}
    fallback: List[int] = []
    for n in good.orders():
        series = good.values(n)
        try:
            per_order[n] = extrapolate(series, strategy)
        except ExtrapolationUnavailableError:
            per_order[n] = float(np.mean(series)) if series.size else 0.0
            fallback.append(n)
            logger.warning("order %d: fewer than two maxima, using the series mean", n)
    scan.per_order = per_order
    scan.fallback_orders = fallback
    scan.extrapolated = float(sum(per_order.values()))
    return per_order, fallback


def velocity_sweep(
    config: ScenarioConfig,
    velocities: Sequence[float],
    *,
    jobs: Optional[int] = None,
    strategy: Optional[str] = None,
) -> List[VelocityRow]:
    if not velocities:
        raise ConfigurationError("velocity list is empty", code="empty_sweep")
    if any(v <= 0.0 for v in velocities):
        raise ConfigurationError("velocities are speeds and must be positive", code="bad_velocity")
    strategy = strategy or config.analysis.strategy
    x0s = config.x0_values_m()
    rows: List[VelocityRow] = []
    for v in velocities:
        cfg = config.with_velocity(v)
        row = VelocityRow(v_mps=float(v))
        try:
            driven = scan_x0(cfg, x0s, ScanMethod.TIME_DEPENDENT, driven=True, jobs=jobs)
            per_order, fallback = extrapolate_orders(driven, strategy)
            row.R_m1 = per_order.get(-1, 0.0)
            row.R_0 = per_order.get(0, 0.0)
            row.R_p1 = per_order.get(1, 0.0)
            row.R_tot = driven.extrapolated
            row.fallback_orders = fallback
            static = scan_x0(cfg, x0s, ScanMethod.STATIONARY, jobs=jobs)
            try:
                row.R_static = extrapolate(static, strategy)
            except ExtrapolationUnavailableError:
                row.R_static = float(np.mean(static.values()))
                logger.warning("v=%g m/s: static series has fewer than two maxima, using the mean", v)
        except QReflError as exc:
            row.error = exc.details["cause"] if isinstance(exc, ScanPointError) else exc.code
            logger.error("v=%g m/s failed: %s", v, exc)
        rows.append(row)
        logger.info("v=%g m/s R_tot=%s R_static=%s", v, row.R_tot, row.R_static)
    return rows


__all__ = [
    "scan_x0",
    "find_local_maxima",
    "extrapolate",
    "double_geometric_average",
    "extrapolate_orders",
    "velocity_sweep",
]
