import json

import pytest
from typer.testing import CliRunner

from app.cli import cli, exit_code_for
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
from app.features.scenario.service import scenario_service

runner = CliRunner()


@pytest.mark.parametrize(
    "exc, code",
    [
        (ConfigurationError("bad"), 2),
        (NumericalBreakdownError("pivot"), 3),
        (IntegrationFailureError("budget"), 3),
        (PropagationTimeoutError("slow"), 3),
        (DomainError("x<=0"), 3),
        (ExtrapolationUnavailableError("one maximum"), 4),
        (QReflError("other"), 1),
        (RuntimeError("boom"), 1),
        (ScanPointError(1e-9, NumericalBreakdownError("pivot")), 3),
    ],
)
def test_exit_codes(exc, code):
    assert exit_code_for(exc) == code


def test_validate_config_prints_resolved_view(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({"particle": {"v_mps": 3.0}}), encoding="utf-8")
    result = runner.invoke(cli, ["validate-config", "--config", str(path)])
    assert result.exit_code == 0, result.output
    body = json.loads(result.stdout)
    assert body["config"]["particle"]["v_mps"] == 3.0
    assert body["derived"]["static"]["n_points"] > 0


def test_invalid_config_exits_with_two(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({"particle": {"speed": 3.0}}), encoding="utf-8")
    result = runner.invoke(cli, ["validate-config", "-c", str(path)])
    assert result.exit_code == 2
    err = json.loads(result.stderr)
    assert err["error"] == "invalid_config"
    assert err["field_errors"][0]["loc"] == "particle.speed"


def test_static_scan_without_maxima_exits_with_four(monkeypatch):
    def fail(config, **_):
        raise ExtrapolationUnavailableError("at least two local maxima are needed", maxima=1)

    monkeypatch.setattr(scenario_service, "run_static_scan", fail)
    result = runner.invoke(cli, ["static-scan"])
    assert result.exit_code == 4
    assert "extrapolation_unavailable" in result.stderr


def test_velocity_sweep_passes_repeated_speeds(monkeypatch, tmp_path):
    seen = {}

    def fake(config, velocities, *, jobs=None, output_dir=None):
        seen.update(velocities=velocities, jobs=jobs, output_dir=output_dir)
        return {"rows": [], "files": []}

    monkeypatch.setattr(scenario_service, "run_velocity_sweep", fake)
    result = runner.invoke(cli, ["velocity-sweep", "--v-mps", "0.5", "--v-mps", "2", "-j", "2", "-o", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert seen["velocities"] == [0.5, 2.0]
    assert seen["jobs"] == 2
    assert str(seen["output_dir"]) == str(tmp_path)


def test_stationary_conflicting_options_exit_with_two():
    result = runner.invoke(cli, ["stationary", "--v-mps", "2", "--k-per-m", "1e9"])
    assert result.exit_code == 2
    assert "conflicting_options" in result.stderr
