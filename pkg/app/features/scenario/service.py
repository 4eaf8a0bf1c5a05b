from __future__ import annotations

import logging
from contextlib import ExitStack
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from app.common.errors import ConfigurationError, ExtrapolationUnavailableError
from app.features.propagator.snapshots import SnapshotWriter
from app.features.scan.schemas import ReflectivityScan, ScanMethod
from app.features.scan.service import extrapolate, extrapolate_orders, scan_x0, velocity_sweep
from app.features.scenario.outputs import ResultWriter
from app.features.scenario.pipeline import TIME_DEPENDENT, run_stationary, run_time_dependent
from app.features.scenario.schemas import ScenarioConfig
from app.features.spectral.service import coordinate_table, momentum_table, z_table
from app.features.units.schemas import Dimension
from app.features.units.service import FACTORS

logger = logging.getLogger("scenario.service")


def _error_text(err: Optional[BaseException]) -> str:
    if err is None:
        return ""
    return getattr(err, "code", type(err).__name__)


def _ratio_suffix(ratio: Optional[float], many: bool) -> str:
    if not many:
        return ""
    return "_omega_abs" if ratio is None else f"_ratio{ratio:g}"


class ScenarioService:
    def run_static_scan(
        self,
        config: ScenarioConfig,
        *,
        jobs: Optional[int] = None,
        output_dir: Optional[str | Path] = None,
    ) -> Dict[str, Any]:
        writer = ResultWriter.for_config(config, output_dir)
        x0s = config.x0_values_m()
        methods = list(dict.fromkeys(config.analysis.methods))
        strategy = config.analysis.strategy

        scans: Dict[str, ReflectivityScan] = {
            m: scan_x0(config, x0s, m, jobs=jobs, fail_fast=False) for m in methods
        }
        table = pd.DataFrame({"x0_m": [pt.x0_m for pt in scans[methods[0]].points]})
        for m in methods:
            column = "R" if len(methods) == 1 else f"R_{m}"
            table[column] = scans[m].values()
        errors = [
            ";".join(f"{m}:{_error_text(scans[m].points[i].error)}" for m in methods if scans[m].points[i].failed)
            for i in range(len(table))
        ]
        if any(errors):
            table["errors"] = errors

        summary: Dict[str, Any] = {"strategy": strategy, "methods": {}}
        for m in methods:
            entry: Dict[str, Any] = {"maxima_indices": scans[m].maxima_indices}
            try:
                entry["R"] = extrapolate(scans[m], strategy)
            except ExtrapolationUnavailableError as exc:
                entry["R"] = None
                entry["reason"] = exc.message
                logger.warning("%s: extrapolation unavailable (%s)", m, exc.message)
            summary["methods"][m] = entry
        values = [summary["methods"][m]["R"] for m in methods]
        if len(methods) == 2 and all(v is not None for v in values):
            td = summary["methods"][ScanMethod.TIME_DEPENDENT]["R"]
            st = summary["methods"][ScanMethod.STATIONARY]["R"]
            summary["relative_deviation"] = abs(td - st) / st if st else None

        writer.csv("static_scan.csv", table)
        writer.json("static_extrapolation.json", summary)
        summary["files"] = [str(p) for p in writer.written]
        if all(v is None for v in values):
            raise ExtrapolationUnavailableError(
                "no method produced an extrapolated reflectivity",
                points=len(x0s),
                files=summary["files"],
            )
        return summary

    def run_driven(
        self,
        config: ScenarioConfig,
        *,
        jobs: Optional[int] = None,
        output_dir: Optional[str | Path] = None,
    ) -> Dict[str, Any]:
        if config.drive.d_m <= 0.0:
            raise ConfigurationError("driven runs need drive.d_m > 0", code="no_drive")
        writer = ResultWriter.for_config(config, output_dir)
        x0s = config.x0_values_m()
        ratios = config.drive.ratios()
        many = len(ratios) > 1
        summary: Dict[str, Any] = {"x0_m": x0s[0], "runs": {}}

        for ratio in ratios:
            suffix = _ratio_suffix(ratio, many)
            res = config.resolve(x0s[0], driven=True, omega_ratio=ratio)
            if res.omega <= 0.0:
                raise ConfigurationError("driven runs need a drive frequency > 0", code="no_drive")
            with ExitStack() as stack:
                trace = None
                if config.analysis.snapshot_every:
                    trace = stack.enter_context(
                        SnapshotWriter(
                            writer.directory / f"trace{suffix}.csv",
                            every=config.analysis.snapshot_every,
                            header=f"config: {config.canonical_json()}",
                        )
                    )
                point = run_time_dependent(
                    res, n_min=config.analysis.n_min, n_max=config.analysis.n_max, snapshots=trace
                )

            assert point.propagation is not None and point.spectrum is not None and point.z is not None
            meta_extra = {"omega_ratio": ratio, "omega_rad_s": res.omega * FACTORS[Dimension.frequency]}
            writer.csv(
                f"coordinate_density{suffix}.csv",
                coordinate_table(point.propagation.final, x_lo=0.0),
                **meta_extra,
            )
            writer.csv(f"momentum_density{suffix}.csv", momentum_table(point.spectrum), **meta_extra)
            writer.csv(f"z_density{suffix}.csv", z_table(point.z), **meta_extra)
            report = point.report.model_dump() if point.report is not None else {}
            writer.json(f"sidebands{suffix}.json", {"report": report, "R_reflected": point.R}, **meta_extra)
            run_info: Dict[str, Any] = {"R": point.R, "report": report, "stopped_by": point.propagation.stopped_by}

            if config.analysis.compare_static:
                static = run_time_dependent(config.resolve(x0s[0]))
                assert static.spectrum is not None
                writer.csv(f"static_momentum_density{suffix}.csv", momentum_table(static.spectrum), **meta_extra)
                run_info["R_static"] = static.R

            summary["runs"]["absolute" if ratio is None else f"{ratio:g}"] = run_info

        if len(x0s) > 1:
            summary["scan"] = self._driven_scan(config, x0s, writer, jobs)
        summary["files"] = [str(p) for p in writer.written]
        return summary

    def _driven_scan(self, config: ScenarioConfig, x0s: List[float], writer: ResultWriter, jobs: Optional[int]):
        scan = scan_x0(config, x0s, TIME_DEPENDENT, driven=True, jobs=jobs, fail_fast=False)
        table = pd.DataFrame(
            {
                "x0_m": scan.x0(),
                "R_m1": scan.values(-1),
                "R_0": scan.values(0),
                "R_p1": scan.values(1),
                "R_tot": scan.values(),
            }
        )
        if any(pt.failed for pt in scan.points):
            table["errors"] = [_error_text(pt.error) for pt in scan.points]
        per_order, fallback = extrapolate_orders(scan, config.analysis.strategy)
        payload = {
            "strategy": config.analysis.strategy,
            "orders": per_order,
            "R_tot": scan.extrapolated,
            "fallback_orders": fallback,
        }
        writer.csv("driven_scan.csv", table)
        writer.json("driven_extrapolation.json", payload)
        return payload

    def run_velocity_sweep(
        self,
        config: ScenarioConfig,
        velocities: Optional[Sequence[float]] = None,
        *,
        jobs: Optional[int] = None,
        output_dir: Optional[str | Path] = None,
    ) -> Dict[str, Any]:
        speeds = list(velocities) if velocities is not None else list(config.analysis.velocities_mps or [])
        if not speeds:
            raise ConfigurationError(
                "velocity sweep needs at least one velocity",
                code="empty_sweep",
                field_errors=[{"loc": "analysis.velocities_mps", "msg": "must contain at least one velocity"}],
            )
        writer = ResultWriter.for_config(config, output_dir)
        rows = velocity_sweep(config, speeds, jobs=jobs)
        table = pd.DataFrame(
            {
                "v_mps": [r.v_mps for r in rows],
                "R_m1": [r.R_m1 for r in rows],
                "R_0": [r.R_0 for r in rows],
                "R_p1": [r.R_p1 for r in rows],
                "R_tot": [r.R_tot for r in rows],
                "R_static": [r.R_static for r in rows],
            }
        )
        if any(r.error for r in rows):
            table["errors"] = [r.error or "" for r in rows]
        writer.csv("velocity_sweep.csv", table)
        return {
            "rows": [r.__dict__ for r in rows],
            "files": [str(p) for p in writer.written],
        }

    def stationary_query(
        self,
        config: ScenarioConfig,
        *,
        x0_m: Optional[float] = None,
        v_mps: Optional[float] = None,
        k_per_m: Optional[float] = None,
    ) -> Dict[str, Any]:
        if v_mps is not None and k_per_m is not None:
            raise ConfigurationError("give either v_mps or k_per_m", code="conflicting_options")
        cfg = config.with_velocity(v_mps) if v_mps is not None else config
        x0 = x0_m if x0_m is not None else cfg.x0_values_m()[0]
        res = cfg.resolve(x0)
        if k_per_m is not None:
            if k_per_m <= 0.0:
                raise ConfigurationError("k_per_m must be positive", code="bad_wavenumber")
            speed = k_per_m * FACTORS[Dimension.length] / res.mass
            res = cfg.with_velocity(speed * FACTORS[Dimension.velocity]).resolve(x0)
        point = run_stationary(res, cfg)
        out: Dict[str, Any] = {"x0_m": x0, "k_per_m": res.k_incident / FACTORS[Dimension.length], "R": point.R}
        if point.solution is not None:
            out.update(
                abs_A=abs(point.solution.A),
                abs_B=abs(point.solution.B),
                flux_residual=point.solution.flux_residual,
                x_f_m=point.solution.x_f * FACTORS[Dimension.length],
            )
        return out

    def validate_config(self, config: ScenarioConfig) -> Dict[str, Any]:
        """Resolved view of a config: defaults filled in plus derived internal quantities."""
        x0s = config.x0_values_m()
        static = config.resolve(x0s[0])
        derived: Dict[str, Any] = {"x0_values_m": x0s, "static": static.summary()}
        if config.drive.d_m > 0.0:
            derived["driven"] = [
                config.resolve(x0s[0], driven=True, omega_ratio=r).summary() for r in config.drive.ratios()
            ]
        return {"config": config.model_dump(mode="json"), "derived": derived}


scenario_service = ScenarioService()
