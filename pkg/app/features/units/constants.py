"""Physical constants (CODATA 2018) and the Hartree atomic unit system.

Internal units: hbar = 1, electron mass = 1, Bohr radius = 1.
"""

from __future__ import annotations

# CODATA 2018, https://physics.nist.gov/cuu/Constants/
BOHR_RADIUS_M = 5.29177210903e-11
HBAR_J_S = 1.054571817e-34  # exact (SI 2019 redefinition of h)
ELECTRON_MASS_KG = 9.1093837015e-31
ELEMENTARY_CHARGE_C = 1.602176634e-19  # exact
AMU_PER_ELECTRON_MASS = 1822.888486209  # m_u / m_e
HARTREE_J_TABULATED = 4.3597447222071e-18

# Derived so that E_h = m_e a0^2 / t_au^2 holds to rounding; agrees with the
# tabulated Hartree energy to ~1e-10 relative.
HARTREE_J = HBAR_J_S**2 / (ELECTRON_MASS_KG * BOHR_RADIUS_M**2)
ATOMIC_TIME_S = HBAR_J_S / HARTREE_J
ATOMIC_VELOCITY_MPS = BOHR_RADIUS_M / ATOMIC_TIME_S
ATOMIC_MASS_UNIT_KG = AMU_PER_ELECTRON_MASS * ELECTRON_MASS_KG
ELECTRONVOLT_J = ELEMENTARY_CHARGE_C

ANGSTROM_M = 1e-10
NANOMETER_M = 1e-9
MICROMETER_M = 1e-6
MICROSECOND_S = 1e-6

# Surface interaction defaults: helium on silicon
DEFAULT_C4_EV_A4 = 23.25
DEFAULT_L_ANGSTROM = 93.0
# 3He
DEFAULT_MASS_U = 3.01603
