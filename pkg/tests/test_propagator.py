import math

import numpy as np
import pytest

from app.common.errors import NumericalBreakdownError, PropagationTimeoutError, QReflError
from app.features.grid_packet.schemas import GridSpec, PacketSpec, WaveField
from app.features.grid_packet.service import calibrate_absorber, gaussian_packet
from app.features.potential.schemas import PotentialParams
from app.features.propagator.schemas import FixedTime, Stationary
from app.features.propagator.service import build_hamiltonian, cn_step, propagate
from app.features.propagator.snapshots import SnapshotWriter
from app.features.propagator.tridiagonal import is_diagonally_dominant, thomas_solve

SURFACE = PotentialParams(C4=1.0, l=1.0, x0=0.5)


def _dense(lower, diag, upper):
    return np.diag(diag) + np.diag(lower, -1) + np.diag(upper, 1)


def _evolve(field, H, dt, steps):
    for step in range(steps):
        field = cn_step(field, H, dt, step=step)
    return field


def _free_density(x, x_c, k0, sigma_x, t, mass=1.0):
    s = sigma_x * math.sqrt(1.0 + (t / (2.0 * mass * sigma_x**2)) ** 2)
    return np.exp(-((x - x_c - k0 / mass * t) ** 2) / (2.0 * s**2)) / (math.sqrt(2.0 * math.pi) * s)


def _free_packet(x_min, x_max, n, k0, sigma_x, dt):
    g = GridSpec(x_min=x_min, x_max=x_max, n_points=n, dt=dt)
    packet = PacketSpec(x_center=0.0, v_mean=k0, dv_rel=1.0 / (2.0 * sigma_x * k0), mass=1.0)
    return g, gaussian_packet(g, packet)


def test_thomas_matches_dense_solve():
    rng = np.random.default_rng(7)
    n = 50
    lower = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
    upper = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
    diag = 5.0 + rng.normal(size=n) + 1j * rng.normal(size=n)
    rhs = rng.normal(size=n) + 1j * rng.normal(size=n)
    x, status = thomas_solve(lower, diag, upper, rhs)
    assert status == -1
    np.testing.assert_allclose(x, np.linalg.solve(_dense(lower, diag, upper), rhs), rtol=1e-12, atol=1e-12)


def test_thomas_reports_zero_pivot_row():
    _, status = thomas_solve(np.array([1.0]), np.array([0.0, 1.0]), np.array([1.0]), np.ones(2))
    assert status == 0
    _, status = thomas_solve(np.array([1.0]), np.array([1.0, 1.0]), np.array([1.0]), np.ones(2))
    assert status == 1


def test_diagonal_dominance_check():
    assert is_diagonally_dominant(np.array([1.0]), np.array([2.0, 2.0]), np.array([1.0]))
    assert not is_diagonally_dominant(np.array([1.0, 1.0]), np.array([3.0, 2.0, 3.0]), np.array([1.0, 1.0]))


def test_hamiltonian_matches_dense_operator():
    g = GridSpec(x_min=-1.0, x_max=1.0, n_points=10, dt=0.1)
    v = np.linspace(-1.0, 1.0, 10)
    H = build_hamiltonian(g, v, mass=2.0)
    c = 1.0 / (2.0 * 2.0 * g.dx**2)
    assert H.diag[3] == pytest.approx(2 * c + v[3])
    assert H.lower[0] == pytest.approx(-c)
    psi = np.arange(10, dtype=complex)
    np.testing.assert_allclose(H.apply(psi), _dense(H.lower, H.diag, H.upper) @ psi)


def test_hamiltonian_rejects_wrong_length():
    g = GridSpec(x_min=-1.0, x_max=1.0, n_points=10, dt=0.1)
    with pytest.raises(QReflError) as err:
        build_hamiltonian(g, np.zeros(9), mass=1.0)
    assert err.value.code == "hamiltonian_shape_mismatch"


def test_free_gaussian_matches_closed_form():
    g, field = _free_packet(-30.0, 40.0, 3500, k0=0.5, sigma_x=2.0, dt=0.01)
    H = build_hamiltonian(g, np.zeros(g.n_points), mass=1.0)
    out = _evolve(field, H, g.dt, 1000)
    exact = _free_density(g.coordinates(), 0.0, 0.5, 2.0, 10.0)
    assert np.max(np.abs(out.density() - exact)) <= 1e-4
    assert out.t == pytest.approx(10.0)


def test_time_step_convergence_is_second_order():
    g, field = _free_packet(-15.0, 20.0, 700, k0=2.0, sigma_x=2.0, dt=0.02)
    H = build_hamiltonian(g, np.zeros(g.n_points), mass=1.0)
    dt = 0.02
    ref = _evolve(field, H, dt / 16, 1600).psi
    coarse = _evolve(field, H, dt, 100).psi
    fine = _evolve(field, H, dt / 2, 200).psi
    order = math.log2(np.linalg.norm(coarse - ref) / np.linalg.norm(fine - ref))
    assert 1.8 <= order <= 2.2


def test_grid_spacing_convergence_is_second_order():
    errors = []
    spacings = []
    for n in (350, 700):
        g, field = _free_packet(-15.0, 20.0, n, k0=1.0, sigma_x=2.0, dt=0.001)
        H = build_hamiltonian(g, np.zeros(g.n_points), mass=1.0)
        out = _evolve(field, H, g.dt, 2000)
        diff = out.density() - _free_density(g.coordinates(), 0.0, 1.0, 2.0, 2.0)
        errors.append(math.sqrt(np.sum(diff**2) * g.dx))
        spacings.append(g.dx)
    order = math.log(errors[0] / errors[1]) / math.log(spacings[0] / spacings[1])
    assert 1.8 <= order <= 2.2


def test_constant_potential_only_adds_a_phase():
    g, field = _free_packet(-20.0, 20.0, 800, k0=1.0, sigma_x=2.0, dt=1e-4)
    free = _evolve(field, build_hamiltonian(g, np.zeros(g.n_points), 1.0), g.dt, 400)
    shifted = _evolve(field, build_hamiltonian(g, np.full(g.n_points, 0.5), 1.0), g.dt, 400)
    np.testing.assert_allclose(shifted.psi, free.psi * np.exp(-1j * 0.5 * 0.04), rtol=0, atol=1e-10)


def test_constant_potential_phase_drift_over_a_long_run():
    # the Cayley form advances each eigenphase by 2 arctan(E dt / 2), not E dt
    g, field = _free_packet(-20.0, 20.0, 800, k0=1.0, sigma_x=2.0, dt=1e-3)
    free = _evolve(field, build_hamiltonian(g, np.zeros(g.n_points), 1.0), g.dt, 1000)
    shifted = _evolve(field, build_hamiltonian(g, np.full(g.n_points, 0.1), 1.0), g.dt, 1000)
    np.testing.assert_allclose(shifted.psi, free.psi * np.exp(-1j * 0.1 * 1.0), atol=1e-6)


def test_norm_is_preserved_without_absorber():
    g = GridSpec(x_min=-40.0, x_max=300.0, n_points=3400, dt=0.01)
    packet = PacketSpec(x_center=100.0, v_mean=-0.5, dv_rel=0.05, mass=1.0)
    field = gaussian_packet(g, packet)
    result = propagate(field, SURFACE, g, None, FixedTime(t_final=100.0), mass=1.0, x_probe=1.0)
    assert result.steps == 10_000
    assert result.absorbed_norm == 0.0
    assert abs(result.final.norm() - field.norm()) <= 1e-10
    assert result.stopped_by == "fixed_time"


def test_absorbed_norm_accounts_for_lost_probability():
    g = GridSpec(x_min=-40.0, x_max=60.0, n_points=2000, dt=0.005)
    packet = PacketSpec(x_center=30.0, v_mean=-1.0, dv_rel=0.1, mass=1.0)
    field = gaussian_packet(g, packet)
    a = calibrate_absorber(-40.0)
    result = propagate(field, SURFACE, g, a, FixedTime(t_final=40.0), mass=1.0, x_probe=1.0)
    assert result.absorbed_norm > 0.0
    assert result.final.norm() + result.absorbed_norm == pytest.approx(1.0, abs=1e-10)
    absorbed = [value for _, value in result.absorbed_history]
    assert absorbed == sorted(absorbed)
    assert result.final.t == pytest.approx(40.0)


def test_static_and_zero_frequency_runs_are_identical():
    g = GridSpec(x_min=-40.0, x_max=60.0, n_points=2000, dt=0.005)
    packet = PacketSpec(x_center=30.0, v_mean=-1.0, dv_rel=0.1, mass=1.0)
    field = gaussian_packet(g, packet)
    no_amplitude = PotentialParams(C4=1.0, l=1.0, x0=0.5, d=0.0, omega=1.0)
    no_frequency = PotentialParams(C4=1.0, l=1.0, x0=0.5, d=0.3, omega=0.0)
    stop = FixedTime(t_final=1.0)
    a = propagate(field, no_amplitude, g, None, stop, mass=1.0, x_probe=1.0)
    b = propagate(field, no_frequency, g, None, stop, mass=1.0, x_probe=1.0)
    assert np.array_equal(a.final.psi, b.final.psi)


def test_driven_run_keeps_norm_without_absorber():
    g = GridSpec(x_min=-40.0, x_max=60.0, n_points=2000, dt=0.005)
    packet = PacketSpec(x_center=30.0, v_mean=-1.0, dv_rel=0.1, mass=1.0)
    field = gaussian_packet(g, packet)
    driven = PotentialParams(C4=1.0, l=1.0, x0=0.5, d=0.05, omega=0.25)
    result = propagate(field, driven, g, None, FixedTime(t_final=5.0), mass=1.0, x_probe=1.0)
    assert abs(result.final.norm() - 1.0) <= 1e-10


def test_non_dominant_matrix_is_rejected_at_setup():
    g = GridSpec(x_min=-40.0, x_max=60.0, n_points=2000, dt=1.0)
    packet = PacketSpec(x_center=30.0, v_mean=-1.0, dv_rel=0.1, mass=1.0)
    with pytest.raises(NumericalBreakdownError) as err:
        propagate(gaussian_packet(g, packet), SURFACE, g, None, FixedTime(t_final=1.0), mass=1.0)
    assert err.value.code == "cn_not_dominant"


def test_stationary_rule_stops_once_packet_leaves_outward():
    g = GridSpec(x_min=-40.0, x_max=300.0, n_points=3400, dt=0.01)
    packet = PacketSpec(x_center=100.0, v_mean=0.5, dv_rel=0.05, mass=1.0)
    rule = Stationary(epsilon=1e-5, window_steps=10, x_probe=1.0, max_steps=1000)
    result = propagate(gaussian_packet(g, packet), SURFACE, g, None, rule, mass=1.0)
    assert result.stopped_by == "stationary"
    assert result.steps == 20
    assert len(result.reflected_norm_history) == 2


def test_stationary_rule_times_out_with_partial_result():
    g = GridSpec(x_min=-40.0, x_max=300.0, n_points=3400, dt=0.01)
    packet = PacketSpec(x_center=100.0, v_mean=-0.5, dv_rel=0.05, mass=1.0)
    rule = Stationary(epsilon=1e-5, window_steps=10, x_probe=1.0, max_steps=50)
    with pytest.raises(PropagationTimeoutError) as err:
        propagate(gaussian_packet(g, packet), SURFACE, g, None, rule, mass=1.0)
    partial = err.value.partial
    assert partial.steps == 50
    assert partial.stopped_by == "timeout"
    assert partial.final.t == pytest.approx(0.5)


def test_snapshot_writer_emits_decimated_rows(tmp_path):
    g = GridSpec(x_min=-40.0, x_max=60.0, n_points=2000, dt=0.005)
    packet = PacketSpec(x_center=30.0, v_mean=-1.0, dv_rel=0.1, mass=1.0)
    path = tmp_path / "trace.csv"
    with SnapshotWriter(path, every=5, decimate=10, header="run: test") as writer:
        propagate(gaussian_packet(g, packet), SURFACE, g, None, FixedTime(t_final=0.1), mass=1.0, snapshots=writer)
    lines = path.read_text().splitlines()
    comments = [ln for ln in lines if ln.startswith("#")]
    rows = [ln for ln in lines if not ln.startswith("#")]
    assert comments[0] == "# run: test"
    assert len(rows) == 4
    assert len(rows[0].split(",")) == 1 + 200


def test_wavefield_after_step_advances_time():
    g, field = _free_packet(-15.0, 20.0, 700, k0=1.0, sigma_x=2.0, dt=0.01)
    out = cn_step(field, build_hamiltonian(g, np.zeros(g.n_points), 1.0), g.dt)
    assert isinstance(out, WaveField)
    assert out.t == pytest.approx(0.01)
