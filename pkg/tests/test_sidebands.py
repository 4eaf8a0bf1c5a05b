"""Driven reflection on a scaled surface.

Internal units with m = C4 = l = x0 = 1 and k_in = 0.4, so each propagation
is a few tens of seconds.
"""

import pytest

from app.features.grid_packet.schemas import GridSpec, PacketSpec
from app.features.grid_packet.service import calibrate_absorber, gaussian_packet
from app.features.potential.schemas import PotentialParams
from app.features.propagator.schemas import FixedTime
from app.features.propagator.service import propagate
from app.features.spectral.service import (
    incident_frequency,
    momentum_spectrum,
    reflected_reflectivity,
    sideband_decompose,
    z_transform,
)

MASS = 1.0
SPEED = 0.4
AMPLITUDE = 0.5
OMEGA_IN = incident_frequency(MASS, SPEED)
T_FINAL = 1100.0

GRID = GridSpec(x_min=-200.0, x_max=800.0, n_points=10000, dt=0.02)
PACKET = PacketSpec(x_center=175.0, v_mean=-SPEED, dv_rel=0.05, mass=MASS)


def _surface(d=0.0, omega=0.0):
    return PotentialParams(C4=1.0, l=1.0, x0=1.0, d=d, omega=omega)


def _spectrum(p):
    result = propagate(
        gaussian_packet(GRID, PACKET),
        p,
        GRID,
        calibrate_absorber(GRID.x_min),
        FixedTime(t_final=T_FINAL),
        mass=MASS,
        x_probe=20.0,
    )
    return momentum_spectrum(result.final)


def _report(spectrum, omega):
    return sideband_decompose(z_transform(spectrum, OMEGA_IN, omega, MASS), -3, 3)


@pytest.fixture(scope="module")
def half_frequency():
    omega = 0.5 * OMEGA_IN
    spectrum = _spectrum(_surface(AMPLITUDE, omega))
    return spectrum, _report(spectrum, omega)


@pytest.fixture(scope="module")
def double_frequency():
    return _report(_spectrum(_surface(AMPLITUDE, 2.0 * OMEGA_IN)), 2.0 * OMEGA_IN)


@pytest.fixture(scope="module")
def static_spectrum():
    return _spectrum(_surface())


def test_reflected_peaks_sit_on_integer_z(half_frequency):
    _, report = half_frequency
    for n in (-1, 0, 1):
        assert n in report.peak_z
        assert abs(report.peak_z[n] - n) <= 0.1


def test_elastic_order_dominates_at_low_speed(half_frequency):
    _, report = half_frequency
    assert report.order(-1) > 0.0
    assert report.order(1) > 0.0
    assert report.order(0) > report.order(-1) + report.order(1)


def test_sidebands_and_unassigned_mass_add_up_to_reflectivity(half_frequency):
    spectrum, report = half_frequency
    assert report.R_tot + report.unassigned == pytest.approx(reflected_reflectivity(spectrum), rel=1e-10)


def test_fast_drive_leaves_only_gain_sidebands(double_frequency):
    # z >= -omega_in / omega = -1/2 for every k > 0, so order -1 has no samples
    assert double_frequency.order(-1) == 0.0
    assert -1 not in double_frequency.peak_z
    assert double_frequency.order(1) > 0.0
    assert abs(double_frequency.peak_z[1] - 1.0) <= 0.1
    assert abs(double_frequency.peak_z[0]) <= 0.1


def test_zero_amplitude_drive_reproduces_static_run(static_spectrum):
    omega = 2.0 * OMEGA_IN
    undriven = _spectrum(_surface(0.0, omega))
    r_static = reflected_reflectivity(static_spectrum)
    assert reflected_reflectivity(undriven) == pytest.approx(r_static, abs=1e-10)
    report = _report(undriven, omega)
    assert report.R_tot - report.order(0) < 1e-6 * report.R_tot
