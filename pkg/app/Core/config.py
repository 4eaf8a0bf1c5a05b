from __future__ import annotations

import os
from functools import lru_cache
from dotenv import load_dotenv, find_dotenv

_env_path = find_dotenv(".env") or ".env"
load_dotenv(_env_path, override=False)


class Settings:
    def __init__(self) -> None:
        self.app_name = "QRefl"
        self.app_version = os.getenv("APP_VERSION", "0.1.0")
        try:
            self.jobs = max(1, int(os.getenv("QREFL_JOBS", str(os.cpu_count() or 1))))
        except Exception:
            self.jobs = os.cpu_count() or 1
        self.output_dir = os.getenv("QREFL_OUTPUT_DIR", "results")
        self.log_level = os.getenv("QREFL_LOG_LEVEL", "INFO").upper()
        # Hard cap for stationarity-driven propagation
        try:
            self.max_steps = int(os.getenv("QREFL_MAX_STEPS", "50000000"))
        except Exception:
            self.max_steps = 50_000_000
        try:
            self.stationary_rtol = float(os.getenv("QREFL_STATIONARY_RTOL", "1e-10"))
        except Exception:
            self.stationary_rtol = 1e-10
        try:
            self.stationary_atol = float(os.getenv("QREFL_STATIONARY_ATOL", "1e-12"))
        except Exception:
            self.stationary_atol = 1e-12
        try:
            self.stationary_max_evaluations = int(os.getenv("QREFL_STATIONARY_MAX_EVALUATIONS", "20000000"))
        except Exception:
            self.stationary_max_evaluations = 20_000_000
        self.debug = os.getenv("DEBUG", "False").lower() == "true"


@lru_cache()
def get_settings() -> Settings:
    return Settings()
