import httpx
import pytest
from fastapi.testclient import TestClient

from app.main import app

client = TestClient(app)


def test_healthz():
    resp = client.get("/healthz")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["uptime_seconds"] >= 0


def test_validate_config_with_defaults():
    resp = client.post("/scenario/validate-config", json={})
    assert resp.status_code == 200
    derived = resp.json()["derived"]
    assert derived["x0_values_m"] == [5e-10]
    assert derived["static"]["stop"] == "fixed_time"


def test_invalid_config_is_unprocessable():
    resp = client.post("/scenario/validate-config", json={"particle": {"bogus": 1}})
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"] == "invalid_config"
    assert body["field_errors"][0]["loc"] == "particle.bogus"


def test_potential_outside_and_inside_surface():
    resp = client.post("/scenario/potential", json={"x_m": [1e-9, -1e-9], "x0_m": 5e-10})
    assert resp.status_code == 200
    outside, inside = resp.json()["V_J"]
    ev = 1.602176634e-19
    assert outside == pytest.approx(-23.25 / (10.0**3 * 103.0) * ev, rel=1e-8)
    assert inside < outside < 0.0


def test_stationary_conflicting_options_are_rejected():
    resp = client.post("/scenario/stationary", json={"v_mps": 2.0, "k_per_m": 1e9})
    assert resp.status_code == 422
    assert resp.json()["error"] == "conflicting_options"


def test_package_exposes_app_lazily():
    import app as package

    assert package.app is app
    assert package.cli.registered_commands


def _async_client():
    return httpx.AsyncClient(transport=httpx.ASGITransport(app=app), base_url="http://qrefl.test")


async def test_healthz_async():
    async with _async_client() as ac:
        resp = await ac.get("/healthz")
    assert resp.status_code == 200
    assert resp.json()["version"] == app.version


async def test_potential_async_matches_sync_client():
    payload = {"x_m": [2e-9, 5e-10, 0.0], "x0_m": 5e-10}
    async with _async_client() as ac:
        resp = await ac.post("/scenario/potential", json=payload)
    assert resp.status_code == 200
    assert resp.json() == client.post("/scenario/potential", json=payload).json()
