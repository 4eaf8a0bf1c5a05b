# app/features/scenario/endpoints.py
from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional

from fastapi import APIRouter, Body
from fastapi.concurrency import run_in_threadpool
from pydantic import BaseModel, Field

from app.features.potential.schemas import PotentialParams
from app.features.potential.service import continued_potential, oscillating_potential
from app.features.scenario.schemas import ScenarioConfig
from app.features.scenario.service import scenario_service
from app.features.units import constants as C
from app.features.units.schemas import Dimension
from app.features.units.service import FACTORS, si_to_internal

logger = logging.getLogger("scenario.endpoints")

router = APIRouter(prefix="/scenario", tags=["scenario"])


class StationaryQuery(BaseModel):
    config: Dict[str, Any] = Field(default_factory=dict)
    x0_m: Optional[float] = Field(default=None, gt=0)
    v_mps: Optional[float] = Field(default=None, gt=0)
    k_per_m: Optional[float] = Field(default=None, gt=0)


class PotentialQuery(BaseModel):
    x_m: List[float] = Field(min_length=1)
    x0_m: float = Field(gt=0)
    C4_eV_A4: float = Field(default=C.DEFAULT_C4_EV_A4, gt=0)
    l_A: float = Field(default=C.DEFAULT_L_ANGSTROM, gt=0)
    d_m: float = Field(default=0.0, ge=0)
    omega_rad_s: float = Field(default=0.0, ge=0)
    t_s: float = 0.0


@router.post("/stationary", summary="Stationary-oracle reflectivity for one wavenumber")
async def stationary(query: StationaryQuery) -> Dict[str, Any]:
    config = ScenarioConfig.from_mapping(query.config)
    return await run_in_threadpool(
        scenario_service.stationary_query,
        config,
        x0_m=query.x0_m,
        v_mps=query.v_mps,
        k_per_m=query.k_per_m,
    )


@router.post("/validate-config", summary="Resolve a scenario config and report derived quantities")
async def validate_config(payload: Dict[str, Any] = Body(default_factory=dict)) -> Dict[str, Any]:
    config = ScenarioConfig.from_mapping(payload)
    return await run_in_threadpool(scenario_service.validate_config, config)


@router.post("/potential", summary="Evaluate the continued (optionally displaced) surface potential")
async def potential(query: PotentialQuery) -> Dict[str, Any]:
    p = PotentialParams.from_lab(
        query.x0_m,
        C4_eV_A4=query.C4_eV_A4,
        l_A=query.l_A,
        d_m=query.d_m,
        omega_rad_s=query.omega_rad_s,
    )
    xs = [si_to_internal(x, Dimension.length) for x in query.x_m]
    if p.is_static:
        values = continued_potential(xs, p)
    else:
        values = oscillating_potential(xs, si_to_internal(query.t_s, Dimension.time), p)
    scale = FACTORS[Dimension.energy]
    return {"x_m": query.x_m, "V_J": [float(v) * scale for v in values]}
