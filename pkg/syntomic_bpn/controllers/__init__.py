"""Convenience imports for controller classes."""

from __future__ import annotations

from .base import BaseController

from .thh import (
    THHController,
    HochschildMayResult,
    HodgeTateSquare,
)

from .prismatic import (
    PrismaticController,
    NygaardDecomposition,
    CanPhiBlock,
)

from .syntomic import (
    SyntomicController,
    SyntomicLedger,
)

from .bp2 import (
    BP2Controller,
    KTheoryTables,
)

__all__ = [
    'BaseController',
    'THHController',
    'HochschildMayResult',
    'HodgeTateSquare',
    'PrismaticController',
    'NygaardDecomposition',
    'CanPhiBlock',
    'SyntomicController',
    'SyntomicLedger',
    'BP2Controller',
    'KTheoryTables',
]
