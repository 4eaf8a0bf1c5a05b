"""Command-line front end: ``python -m app.cli <command> --config scenario.json``."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Callable, List, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler

from app.Core.config import get_settings
from app.common.errors import (
    ConfigurationError,
    DomainError,
    ExtrapolationUnavailableError,
    IntegrationFailureError,
    NumericalBreakdownError,
    PropagationTimeoutError,
    QReflError,
    ScanPointError,
)
from app.features.scenario.schemas import ScenarioConfig
from app.features.scenario.service import scenario_service

logger = logging.getLogger("cli")

cli = typer.Typer(add_completion=False, no_args_is_help=True, help="Quantum reflection from static and oscillating surfaces.")

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_EXTRAPOLATION = 4

ConfigOption = typer.Option(None, "--config", "-c", help="Scenario JSON file; defaults apply when omitted.")
JobsOption = typer.Option(None, "--jobs", "-j", min=1, help="Worker processes (default: QREFL_JOBS or CPU count).")
OutputOption = typer.Option(None, "--output-dir", "-o", help="Overrides output.directory.")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, ScanPointError):
        return exit_code_for(exc.cause)
    if isinstance(exc, ConfigurationError):
        return EXIT_CONFIG
    if isinstance(exc, ExtrapolationUnavailableError):
        return EXIT_EXTRAPOLATION
    if isinstance(exc, (NumericalBreakdownError, IntegrationFailureError, PropagationTimeoutError, DomainError)):
        return EXIT_NUMERICAL
    return EXIT_OTHER


def configure_logging(level: Optional[str] = None) -> None:
    name = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.INFO),
        format="%(name)s: %(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False, markup=False)],
        force=True,
    )


def _load(config: Optional[Path]) -> ScenarioConfig:
    if config is None:
        return ScenarioConfig()
    return ScenarioConfig.from_file(config)


def _run(action: Callable[[], Any]) -> None:
    try:
        result = action()
    except QReflError as exc:
        typer.echo(json.dumps(exc.to_dict(), sort_keys=True), err=True)
        raise typer.Exit(code=exit_code_for(exc))
    except Exception as exc:
        logger.exception("unexpected failure")
        typer.echo(json.dumps({"error": "internal_error", "message": str(exc)}), err=True)
        raise typer.Exit(code=EXIT_OTHER)
    typer.echo(json.dumps(result, indent=2, sort_keys=True, default=str))


@cli.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Overrides QREFL_LOG_LEVEL."),
) -> None:
    configure_logging(log_level)


@cli.command("static-scan")
def static_scan(
    config: Optional[Path] = ConfigOption,
    jobs: Optional[int] = JobsOption,
    output_dir: Optional[Path] = OutputOption,
) -> None:
    """x0 scan of the static potential with both methods, plus extrapolation."""
    _run(lambda: scenario_service.run_static_scan(_load(config), jobs=jobs, output_dir=output_dir))


@cli.command("driven")
def driven(
    config: Optional[Path] = ConfigOption,
    jobs: Optional[int] = JobsOption,
    output_dir: Optional[Path] = OutputOption,
) -> None:
    """Oscillating surface: densities, sideband report and (for x0 ranges) per-order extrapolation."""
    _run(lambda: scenario_service.run_driven(_load(config), jobs=jobs, output_dir=output_dir))


@cli.command("velocity-sweep")
def velocity_sweep(
    config: Optional[Path] = ConfigOption,
    velocity: Optional[List[float]] = typer.Option(None, "--v-mps", help="Repeat for several speeds."),
    jobs: Optional[int] = JobsOption,
    output_dir: Optional[Path] = OutputOption,
) -> None:
    """Driven and static extrapolated reflectivities for several incident speeds."""
    _run(
        lambda: scenario_service.run_velocity_sweep(
            _load(config), velocity or None, jobs=jobs, output_dir=output_dir
        )
    )


@cli.command("stationary")
def stationary(
    config: Optional[Path] = ConfigOption,
    x0_m: Optional[float] = typer.Option(None, "--x0-m"),
    v_mps: Optional[float] = typer.Option(None, "--v-mps"),
    k_per_m: Optional[float] = typer.Option(None, "--k-per-m"),
) -> None:
    """Single-wavenumber stationary-oracle query."""
    _run(lambda: scenario_service.stationary_query(_load(config), x0_m=x0_m, v_mps=v_mps, k_per_m=k_per_m))


@cli.command("validate-config")
def validate_config(config: Optional[Path] = ConfigOption) -> None:
    """Print the resolved config with defaults and derived grid quantities."""
    _run(lambda: scenario_service.validate_config(_load(config)))


if __name__ == "__main__":
    cli()
