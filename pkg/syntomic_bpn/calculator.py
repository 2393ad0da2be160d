"""Entry object owning engine settings, the run cache and the controllers."""

from __future__ import annotations

import logging
from typing import Dict, Optional, Tuple

from .config import EngineSettings, Window
from .controllers import (
    BP2Controller,
    PrismaticController,
    SyntomicController,
    THHController,
)
from .engine.models import SpectralRun, SpectralSequence
from .engine.runner import run

__all__ = ['SyntomicCalculator']

logger = logging.getLogger(__name__)


class SyntomicCalculator:
    """Main calculator."""

    def __init__(self, settings: Optional[EngineSettings] = None):
        self.settings = settings if settings is not None else EngineSettings.from_env()
        self._runs: Dict[Tuple[str, Window], SpectralRun] = {}

        # Initialize controller instances
        self.thh = THHController(self)
        self.prismatic = PrismaticController(self)
        self.syntomic = SyntomicController(self)
        self.bp2 = BP2Controller(self)

    def run(self, sequence: SpectralSequence, window: Window) -> SpectralRun:
        """Run a built-in sequence over a report window, reusing earlier runs."""
        key = (sequence.name, window)
        cached = self._runs.get(key)
        if cached is None:
            logger.debug("running %s over %s", sequence.name, window.to_dict())
            cached = run(sequence, window, max_monomials=self.settings.max_monomials)
            self._runs[key] = cached
        return cached

    def clear_cache(self) -> None:
        self._runs.clear()
