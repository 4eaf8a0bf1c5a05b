"""QRefl package.

``app`` (the FastAPI application) and ``cli`` (the typer front end) load
lazily so numerical code can be imported without the web stack."""

from __future__ import annotations

__all__ = ["app", "cli"]


def __getattr__(name: str):
    if name == "app":
        from .main import app as fastapi_app
        return fastapi_app
    if name == "cli":
        from .cli import cli as typer_app
        return typer_app
    raise AttributeError(f"module {__name__} has no attribute {name!r}")
