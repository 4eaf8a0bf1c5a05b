"""Exception hierarchy shared by every feature.

Each error carries a stable snake_case ``code`` so the CLI and the HTTP
surface can report failures in a machine-readable way.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional


class QReflError(Exception):
    code = "qrefl_error"

    def __init__(self, message: str, *, code: Optional[str] = None, **details: Any) -> None:
        super().__init__(message)
        if code:
            self.code = code
        self.message = message
        self.details: Dict[str, Any] = details

    def __reduce__(self):
        # worker processes ship errors back by pickle; keep code and details
        return (_restore_error, (type(self), self.args, self.__dict__.copy()))

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"error": self.code, "message": self.message}
        if self.details:
            payload["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return payload


class ConfigurationError(QReflError, ValueError):
    code = "configuration_error"

    def __init__(
        self,
        message: str,
        *,
        code: Optional[str] = None,
        field_errors: Optional[List[Dict[str, str]]] = None,
        **details: Any,
    ) -> None:
        super().__init__(message, code=code, **details)
        self.field_errors = list(field_errors or [])

    def to_dict(self) -> Dict[str, Any]:
        payload = super().to_dict()
        if self.field_errors:
            payload["field_errors"] = self.field_errors
        return payload


class DomainError(QReflError, ValueError):
    code = "domain_error"


class TransformUndefinedError(DomainError):
    code = "transform_undefined"


class EvanescentTransmissionError(DomainError):
    code = "evanescent_transmission"


class NumericalBreakdownError(QReflError, ArithmeticError):
    code = "numerical_breakdown"


class PropagationTimeoutError(QReflError):
    code = "propagation_timeout"

    def __init__(self, message: str, *, partial: Any = None, **details: Any) -> None:
        super().__init__(message, **details)
        self.partial = partial


class IntegrationFailureError(QReflError):
    code = "integration_failure"


class ExtrapolationUnavailableError(QReflError):
    code = "extrapolation_unavailable"


class ScanPointError(QReflError):
    code = "scan_point_failed"

    def __init__(self, x0: float, cause: BaseException) -> None:
        super().__init__(f"x0={x0!r}: {cause}", x0=x0, cause=getattr(cause, "code", type(cause).__name__))
        self.x0 = x0
        self.cause = cause


def _restore_error(cls, args, state):
    err = cls.__new__(cls)
    Exception.__init__(err, *args)
    err.__dict__.update(state)
    return err


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    try:
        return float(value)
    except Exception:
        return str(value)


__all__ = [
    "QReflError",
    "ConfigurationError",
    "DomainError",
    "TransformUndefinedError",
    "EvanescentTransmissionError",
    "NumericalBreakdownError",
    "PropagationTimeoutError",
    "IntegrationFailureError",
    "ExtrapolationUnavailableError",
    "ScanPointError",
]
