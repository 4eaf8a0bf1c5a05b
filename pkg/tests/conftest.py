import os
import sys

import pytest

# Ensure repo root on sys.path for imports like `app...`
ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch, tmp_path):
    """Keep runs out of the working tree and on a single worker."""
    from app.Core.config import get_settings

    monkeypatch.setenv("QREFL_OUTPUT_DIR", str(tmp_path / "results"))
    monkeypatch.setenv("QREFL_JOBS", "1")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
