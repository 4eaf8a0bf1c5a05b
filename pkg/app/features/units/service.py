"""SI / lab unit <-> Hartree atomic unit conversions."""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from app.common.errors import ConfigurationError
from app.features.units import constants as C
from app.features.units.schemas import Dimension, PhysicalQuantity

# SI value of one internal unit, per dimension
FACTORS: Dict[Dimension, float] = {
    Dimension.length: C.BOHR_RADIUS_M,
    Dimension.time: C.ATOMIC_TIME_S,
    Dimension.velocity: C.ATOMIC_VELOCITY_MPS,
    Dimension.mass: C.ELECTRON_MASS_KG,
    Dimension.energy: C.HARTREE_J,
    Dimension.frequency: 1.0 / C.ATOMIC_TIME_S,
    Dimension.c4: C.HARTREE_J * C.BOHR_RADIUS_M**4,
}

SI_UNITS: Dict[Dimension, str] = {
    Dimension.length: "m",
    Dimension.time: "s",
    Dimension.velocity: "m/s",
    Dimension.mass: "kg",
    Dimension.energy: "J",
    Dimension.frequency: "rad/s",
    Dimension.c4: "J*m^4",
}

# lab unit -> SI value of one lab unit
_LAB_UNITS: Dict[Tuple[Dimension, str], float] = {
    (Dimension.length, "angstrom"): C.ANGSTROM_M,
    (Dimension.length, "nm"): C.NANOMETER_M,
    (Dimension.length, "um"): C.MICROMETER_M,
    (Dimension.time, "us"): C.MICROSECOND_S,
    (Dimension.mass, "u"): C.ATOMIC_MASS_UNIT_KG,
    (Dimension.energy, "eV"): C.ELECTRONVOLT_J,
    (Dimension.c4, "eV*angstrom^4"): C.ELECTRONVOLT_J * C.ANGSTROM_M**4,
}

# u -> internal mass goes through the tabulated ratio directly
_DIRECT: Dict[Tuple[Dimension, str], float] = {
    (Dimension.mass, "u"): C.AMU_PER_ELECTRON_MASS,
}


def resolve_dimension(name: str | Dimension) -> Dimension:
    if isinstance(name, Dimension):
        return name
    text = str(name or "").strip().lower()
    try:
        return Dimension(text)
    except ValueError:
        raise ConfigurationError(
            f"unsupported dimension {name!r}",
            code="unsupported_dimension",
            dimension=str(name),
        ) from None


def _unit_scale(dimension: Dimension, unit: Optional[str]) -> Optional[float]:
    """SI value of one ``unit``; None means the SI unit itself."""
    if unit is None or unit == SI_UNITS[dimension]:
        return None
    scale = _LAB_UNITS.get((dimension, unit))
    if scale is None:
        raise ConfigurationError(
            f"unsupported unit {unit!r} for {dimension.value}",
            code="unsupported_unit",
            dimension=dimension.value,
            unit=unit,
        )
    return scale


def to_internal(q: PhysicalQuantity) -> float:
    dimension = resolve_dimension(q.dimension)
    direct = _DIRECT.get((dimension, q.unit or ""))
    if direct is not None:
        return q.value * direct
    scale = _unit_scale(dimension, q.unit)
    value_si = q.value if scale is None else q.value * scale
    return value_si / FACTORS[dimension]


def from_internal(value: float, dimension: str | Dimension, unit: Optional[str] = None) -> PhysicalQuantity:
    dim = resolve_dimension(dimension)
    direct = _DIRECT.get((dim, unit or ""))
    if direct is not None:
        return PhysicalQuantity(value=value / direct, dimension=dim.value, unit=unit)
    scale = _unit_scale(dim, unit)
    value_si = value * FACTORS[dim]
    if scale is not None:
        value_si = value_si / scale
    return PhysicalQuantity(value=value_si, dimension=dim.value, unit=unit)


def si_to_internal(value: float, dimension: str | Dimension, unit: Optional[str] = None) -> float:
    dim = resolve_dimension(dimension)
    return to_internal(PhysicalQuantity(value=value, dimension=dim.value, unit=unit))


def internal_to_si(value: float, dimension: str | Dimension, unit: Optional[str] = None) -> float:
    return from_internal(value, dimension, unit).value


__all__ = [
    "FACTORS",
    "SI_UNITS",
    "resolve_dimension",
    "to_internal",
    "from_internal",
    "si_to_internal",
    "internal_to_si",
]
