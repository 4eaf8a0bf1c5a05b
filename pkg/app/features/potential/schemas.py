from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from app.features.units import constants as C
from app.features.units.schemas import Dimension
from app.features.units.service import si_to_internal


class PotentialParams(BaseModel):
    """Surface interaction in internal units.

    C4: energy*length^4, l: reduced transition wavelength, x0: connection
    point, d: drive amplitude, omega: drive angular frequency.
    """

    model_config = ConfigDict(frozen=True)

    C4: float = Field(gt=0)
    l: float = Field(gt=0)
    x0: float = Field(gt=0)
    d: float = Field(default=0.0, ge=0)
    omega: float = Field(default=0.0, ge=0)

    @property
    def is_static(self) -> bool:
        return self.d == 0.0 or self.omega == 0.0

    @classmethod
    def from_lab(
        cls,
        x0_m: float,
        C4_eV_A4: float = C.DEFAULT_C4_EV_A4,
        l_A: float = C.DEFAULT_L_ANGSTROM,
        d_m: float = 0.0,
        omega_rad_s: float = 0.0,
    ) -> "PotentialParams":
        return cls(
            C4=si_to_internal(C4_eV_A4, Dimension.c4, "eV*angstrom^4"),
            l=si_to_internal(l_A, Dimension.length, "angstrom"),
            x0=si_to_internal(x0_m, Dimension.length),
            d=si_to_internal(d_m, Dimension.length),
            omega=si_to_internal(omega_rad_s, Dimension.frequency),
        )
