"""Configuration primitives for the syntomic calculator."""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from .algebra.linalg_fp import is_prime
from .exceptions import ErrorCode, SyntomicError

__all__ = ["Window", "OutputFormat", "RunConfig", "EngineSettings", "MAX_WINDOW_ENV"]

MAX_WINDOW_ENV = "SYNTO_MAX_WINDOW"

Interval = Tuple[int, int]


def _check_interval(name: str, interval: Optional[Interval]) -> Optional[Interval]:
    if interval is None:
        return None
    lo, hi = (int(interval[0]), int(interval[1]))
    if lo > hi:
        raise SyntomicError(
            f"{name} interval {lo}..{hi} is empty",
            ErrorCode.CONFIG,
            {"field": name, "interval": [lo, hi]},
        )
    return lo, hi


def _within(value: int, interval: Optional[Interval]) -> bool:
    return interval is None or interval[0] <= value <= interval[1]


def _grow(interval: Optional[Interval], amount: int) -> Optional[Interval]:
    if interval is None:
        return None
    return interval[0] - amount, interval[1] + amount


@dataclass(frozen=True)
class Window:
    """Degree interval with optional Adams-weight and filtration bounds."""

    degree: Interval
    weight: Optional[Interval] = None
    filtration: Optional[Interval] = None

    def __post_init__(self):
        object.__setattr__(self, "degree", _check_interval("degree", self.degree))
        object.__setattr__(self, "weight", _check_interval("weight", self.weight))
        object.__setattr__(
            self, "filtration", _check_interval("filtration", self.filtration)
        )

    @classmethod
    def parse(cls, text: str) -> Window:
        """Parse the command-line form ``a..b``."""
        lo, sep, hi = text.strip().partition("..")
        try:
            if not sep:
                raise ValueError(text)
            return cls((int(lo), int(hi)))
        except ValueError:
            raise SyntomicError(
                f"window '{text}' is not of the form a..b",
                ErrorCode.CONFIG,
                {"field": "window", "value": text},
            ) from None

    @property
    def low(self) -> int:
        return self.degree[0]

    @property
    def high(self) -> int:
        return self.degree[1]

    def contains(
        self, degree: int, weight: Optional[int] = None, filtration: Optional[int] = None
    ) -> bool:
        """Whether a cell lies in the window; omitted coordinates are not checked."""
        if not _within(degree, self.degree):
            return False
        if weight is not None and not _within(weight, self.weight):
            return False
        if filtration is not None and not _within(filtration, self.filtration):
            return False
        return True

    def expand(self, degree: int = 0, weight: int = 0, filtration: int = 0) -> Window:
        """Grow every bounded interval by the given margins."""
        return Window(
            _grow(self.degree, degree),
            _grow(self.weight, weight),
            _grow(self.filtration, filtration),
        )

    def covers(self, other: Window) -> bool:
        """Whether ``other`` lies inside this window on every bounded axis."""
        pairs = (
            (self.degree, other.degree),
            (self.weight, other.weight),
            (self.filtration, other.filtration),
        )
        for mine, theirs in pairs:
            if mine is None:
                continue
            if theirs is None or theirs[0] < mine[0] or theirs[1] > mine[1]:
                return False
        return True

    def with_degree(self, lo: int, hi: int) -> Window:
        return Window((lo, hi), self.weight, self.filtration)

    def with_filtration(self, lo: int, hi: int) -> Window:
        return Window(self.degree, self.weight, (lo, hi))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Window:
        """Inverse of ``to_dict``; intervals may be JSON lists."""
        return cls(tuple(data["degree"]), data.get("weight"), data.get("filtration"))

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"degree": list(self.degree)}
        if self.weight is not None:
            result["weight"] = list(self.weight)
        if self.filtration is not None:
            result["filtration"] = list(self.filtration)
        return result

    def __str__(self) -> str:
        return f"{self.degree[0]}..{self.degree[1]}"


class OutputFormat(Enum):
    """Artifact formats written by the command line."""

    TEXT = "text"
    SVG = "svg"
    JSON = "json"


@dataclass
class RunConfig:
    """Validated settings for one command-line invocation."""

    command: str
    p: int = 2
    n: int = 0
    window: Optional[Window] = None
    output_format: OutputFormat = OutputFormat.TEXT
    output_path: Optional[Path] = None
    definitions_path: Optional[Path] = None

    def __post_init__(self):
        if isinstance(self.output_format, str):
            try:
                self.output_format = OutputFormat(self.output_format)
            except ValueError:
                raise SyntomicError(
                    f"unknown output format '{self.output_format}'",
                    ErrorCode.CONFIG,
                    {"field": "format"},
                ) from None
        if not is_prime(self.p):
            raise SyntomicError(
                f"p={self.p} is not prime", ErrorCode.CONFIG, {"field": "p"}
            )
        if self.n < -1:
            raise SyntomicError(
                f"height n={self.n} must be at least -1", ErrorCode.CONFIG, {"field": "n"}
            )
        if self.output_path is not None:
            self.output_path = Path(self.output_path)
        if self.definitions_path is not None:
            self.definitions_path = Path(self.definitions_path)


@dataclass(frozen=True)
class EngineSettings:
    """Limits applied to every spectral-sequence run."""

    max_monomials: Optional[int] = None

    def __post_init__(self):
        if self.max_monomials is not None and self.max_monomials < 1:
            raise SyntomicError(
                f"{MAX_WINDOW_ENV} must be positive, got {self.max_monomials}",
                ErrorCode.CONFIG,
            )

    @classmethod
    def from_env(cls) -> EngineSettings:
        """Read the enumeration cap from ``SYNTO_MAX_WINDOW``; unset means uncapped."""
        raw = os.getenv(MAX_WINDOW_ENV, "").strip()
        if not raw:
            return cls()
        try:
            return cls(max_monomials=int(raw))
        except ValueError:
            raise SyntomicError(
                f"{MAX_WINDOW_ENV}='{raw}' is not an integer", ErrorCode.CONFIG
            ) from None
