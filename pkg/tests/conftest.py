import os
import random

import pytest

from syntomic_bpn.calculator import SyntomicCalculator
from syntomic_bpn.config import EngineSettings, MAX_WINDOW_ENV


@pytest.fixture(scope="session")
def calculator():
    """Provide one calculator per session so spectral runs are cached across tests."""
    limit = os.getenv(MAX_WINDOW_ENV)
    settings = EngineSettings(max_monomials=int(limit)) if limit else EngineSettings()
    return SyntomicCalculator(settings)


@pytest.fixture
def rng():
    """Seeded random source for sampled property checks."""
    return random.Random(20240)
