# app/main.py
"""FastAPI surface for the cheap synchronous queries."""

from __future__ import annotations

import logging
from datetime import datetime, timezone
from typing import Any, Dict

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from app.Core.config import get_settings
from app.common.errors import ConfigurationError, DomainError, QReflError
from app.features.scenario.endpoints import router as scenario_router

_settings = get_settings()
_START_TIME = datetime.now(timezone.utc)
logger = logging.getLogger("request")

app = FastAPI(title=_settings.app_name, version=_settings.app_version)


@app.exception_handler(QReflError)
async def _qrefl_error_handler(request: Request, exc: QReflError) -> JSONResponse:
    status = 422 if isinstance(exc, (ConfigurationError, DomainError)) else 500
    logger.info("request.error", extra={"path": request.url.path, "code": exc.code, "status_code": status})
    return JSONResponse(status_code=status, content=exc.to_dict())


app.include_router(scenario_router)


@app.get("/", tags=["meta"], summary="API Root")
async def root():
    return {"name": _settings.app_name, "status": "ok", "docs": "/docs", "health": "/healthz"}


@app.get("/healthz", tags=["meta"], summary="Liveness probe")
async def healthz() -> Dict[str, Any]:
    now = datetime.now(timezone.utc)
    return {
        "status": "ok",
        "time_utc": now.isoformat(),
        "uptime_seconds": round((now - _START_TIME).total_seconds(), 2),
        "version": _settings.app_version,
        "environment": "debug" if _settings.debug else "prod",
        "jobs": _settings.jobs,
        "counts": {"routes": len(app.routes)},
    }
