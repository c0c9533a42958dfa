import json
import os
from fractions import Fraction

import pytest

from arithlab_toolkit import config as lab_config
from arithlab_toolkit.modforms import QSeries

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "arithlab_toolkit", "data",
                        "fixtures.json")


def eta_product_delta(N: int) -> QSeries:
    """q * prod_{n>=1} (1 - q^n)^24 to precision N, built without Eisenstein series."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for n in range(1, N + 1):
        for _ in range(24):
            # multiply in place by (1 - q^n), highest degree first
            for m in range(N, n - 1, -1):
                coeffs[m] -= coeffs[m - n]
    shifted = [0] + coeffs[:N]
    return QSeries([Fraction(c) for c in shifted], N, 12)


@pytest.fixture(scope="session")
def fixtures():
    with open(FIXTURES, encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(autouse=True)
def default_config(monkeypatch):
    """Every test starts from the built-in budgets, whatever .lab_env says."""
    for key in lab_config._KEYS.values():
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setattr(lab_config, "_active", lab_config.LabConfig())
    yield
