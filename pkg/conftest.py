# conftest.py
import os

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running oracle cross-checks (set PROZETA_SLOW=1)")


def pytest_collection_modifyitems(config, items):
    if os.getenv("PROZETA_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set PROZETA_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    monkeypatch.delenv("PROZETA_CAPS", raising=False)
    monkeypatch.setattr("src.config.CAPS_OVERRIDES", "")
    monkeypatch.setattr("src.config.AUDIT_FILE", None)
    monkeypatch.setattr("src.config.METRICS_FILE", None)
