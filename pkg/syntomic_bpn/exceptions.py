"""Custom exceptions for the syntomic calculator."""

from __future__ import annotations

from enum import Enum
from typing import Any, Dict, Optional

__all__ = ["ErrorCode", "SyntomicError"]


class ErrorCode(Enum):
    """Machine-readable failure categories."""

    CONFIG = "CONFIG"
    PRECONDITION = "PRECONDITION"
    PARSE_ERROR = "PARSE_ERROR"
    BIDEGREE_MISMATCH = "BIDEGREE_MISMATCH"
    RANGE_EMPTY = "RANGE_EMPTY"
    INFINITE_WINDOW = "INFINITE_WINDOW"
    WINDOW_TOO_SMALL = "WINDOW_TOO_SMALL"
    WINDOW_LIMIT = "WINDOW_LIMIT"
    DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
    COMPOSITION_NONZERO = "COMPOSITION_NONZERO"
    NO_ROOM_FAILED = "NO_ROOM_FAILED"
    VERIFICATION_FAILED = "VERIFICATION_FAILED"

    @property
    def exit_status(self) -> int:
        """Process exit status used by the command line."""
        if self in _WINDOW_CODES:
            return 3
        if self in _VERIFICATION_CODES:
            return 4
        return 2


_WINDOW_CODES = frozenset(
    {
        ErrorCode.INFINITE_WINDOW,
        ErrorCode.WINDOW_TOO_SMALL,
        ErrorCode.WINDOW_LIMIT,
        ErrorCode.DIMENSION_MISMATCH,
    }
)
_VERIFICATION_CODES = frozenset(
    {
        ErrorCode.COMPOSITION_NONZERO,
        ErrorCode.NO_ROOM_FAILED,
        ErrorCode.VERIFICATION_FAILED,
    }
)


class SyntomicError(Exception):
    """Base exception for calculator errors."""

    def __init__(
        self,
        message: str,
        code: ErrorCode = ErrorCode.PRECONDITION,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.message = message
        self.code = code
        self.details = details or {}
        super().__init__(message)

    def diagnostic(self) -> str:
        """Single-line diagnostic with a parsable prefix."""
        return f"error[{self.code.value}]: {self.message}"
