"""Public API for exact syntomic, prismatic and THH computations of BP⟨n⟩."""

from __future__ import annotations

from .calculator import SyntomicCalculator
from .config import EngineSettings, OutputFormat, RunConfig, Window
from .controllers import (
    BP2Controller,
    PrismaticController,
    SyntomicController,
    THHController,
)
from .exceptions import ErrorCode, SyntomicError
from .models import BasisClass, BigradedBasis, CheckResult, DimensionTable

__version__ = '0.1.0'


__all__ = [
    '__version__',
    'SyntomicCalculator',
    'EngineSettings',
    'OutputFormat',
    'RunConfig',
    'Window',
    'ErrorCode',
    'SyntomicError',
    'BasisClass',
    'BigradedBasis',
    'CheckResult',
    'DimensionTable',
    'THHController',
    'PrismaticController',
    'SyntomicController',
    'BP2Controller',
]
