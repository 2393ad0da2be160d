"""Shared helpers for calculator controllers."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional, Sequence, Tuple, Union

from ..algebra.linalg_fp import is_prime
from ..config import Window
from ..engine.models import SpectralRun, SpectralSequence
from ..exceptions import ErrorCode, SyntomicError

if TYPE_CHECKING:  # pragma: no cover
    from ..calculator import SyntomicCalculator

__all__ = ["BaseController", "WindowLike"]

WindowLike = Union[Window, Tuple[int, int], Sequence[int]]


class BaseController:
    """Base controller class."""

    def __init__(self, calculator: "SyntomicCalculator"):
        self.calculator = calculator

    @staticmethod
    def _check_parameters(p: int, n: Optional[int] = None, min_prime: int = 2) -> None:
        if not is_prime(p):
            raise SyntomicError(f"p={p} is not prime", ErrorCode.PRECONDITION, {"p": p})
        if p < min_prime:
            raise SyntomicError(
                f"p={p} is out of range; this computation needs p >= {min_prime}",
                ErrorCode.PRECONDITION,
                {"p": p},
            )
        if n is not None and n < -1:
            raise SyntomicError(f"height n={n} must be at least -1", ErrorCode.PRECONDITION)

    @staticmethod
    def _window(window: WindowLike) -> Window:
        """Accept a ``Window`` or a plain ``(low, high)`` degree pair."""
        if isinstance(window, Window):
            return window
        low, high = window
        return Window((int(low), int(high)))

    def _run(self, sequence: SpectralSequence, window: Window) -> SpectralRun:
        return self.calculator.run(sequence, window)
