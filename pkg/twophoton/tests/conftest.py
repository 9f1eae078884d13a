"""Shared test fixtures."""

import os

import pytest

from twophoton.config import get_settings


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Isolate tests from TWOPHOTON_* variables in the developer's shell."""
    for name in list(os.environ):
        if name.startswith("TWOPHOTON_"):
            monkeypatch.delenv(name)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
