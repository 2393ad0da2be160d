"""Result models shared by the builders, renderers and command line."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from .config import Window
from .exceptions import ErrorCode, SyntomicError

__all__ = ["BasisClass", "BigradedBasis", "DimensionTable", "CheckResult"]


@dataclass(frozen=True)
class BasisClass:
    """One labeled class at a bidegree."""

    label: str
    degree: int
    adams_weight: int
    filtration: Optional[int] = None
    piece: Optional[str] = None
    detected_by: Optional[str] = None

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.degree, self.adams_weight

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "label": self.label,
            "degree": self.degree,
            "adams_weight": self.adams_weight,
        }
        if self.filtration is not None:
            result["filtration"] = self.filtration
        if self.piece is not None:
            result["piece"] = self.piece
        if self.detected_by is not None:
            result["detected_by"] = self.detected_by
        return result

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> BasisClass:
        return cls(
            label=data["label"],
            degree=data["degree"],
            adams_weight=data["adams_weight"],
            filtration=data.get("filtration"),
            piece=data.get("piece"),
            detected_by=data.get("detected_by"),
        )


@dataclass(frozen=True)
class BigradedBasis:
    """Labeled classes with bidegrees; the common output of every builder."""

    p: int
    n: Optional[int]
    window: Window
    classes: Tuple[BasisClass, ...] = ()
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        duplicates = [label for label, count in Counter(c.label for c in self.classes).items() if count > 1]
        if duplicates:
            raise SyntomicError(
                f"duplicate class labels {duplicates}", ErrorCode.VERIFICATION_FAILED,
                {"labels": duplicates},
            )
        outside = [c.label for c in self.classes if not self.window.contains(c.degree, c.adams_weight)]
        if outside:
            raise SyntomicError(
                f"classes {outside} lie outside window {self.window}",
                ErrorCode.VERIFICATION_FAILED,
                {"labels": outside},
            )

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[BasisClass]:
        return iter(self.classes)

    @property
    def labels(self) -> List[str]:
        return [c.label for c in self.classes]

    def get(self, label: str) -> Optional[BasisClass]:
        for candidate in self.classes:
            if candidate.label == label:
                return candidate
        return None

    def bidegrees(self) -> Dict[str, Tuple[int, int]]:
        return {c.label: c.bidegree for c in self.classes}

    def row_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for c in self.classes:
            counts[c.adams_weight] = counts.get(c.adams_weight, 0) + 1
        return dict(sorted(counts.items()))

    def restrict(self, window: Window) -> BigradedBasis:
        kept = [c for c in self.classes if window.contains(c.degree, c.adams_weight)]
        return BigradedBasis(self.p, self.n, window, tuple(kept), self.metadata)

    def signature(self) -> set:
        """Set of ``(label, degree, weight)`` triples for comparisons."""
        return {(c.label, c.degree, c.adams_weight) for c in self.classes}

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "p": self.p,
            "n": self.n,
            "window": self.window.to_dict(),
            "classes": [c.to_dict() for c in self.classes],
        }
        if self.metadata:
            result["metadata"] = dict(self.metadata)
        return result

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> BigradedBasis:
        return cls(
            p=data["p"],
            n=data.get("n"),
            window=Window.from_dict(data["window"]),
            classes=tuple(BasisClass.from_dict(item) for item in data["classes"]),
            metadata=dict(data.get("metadata", {})),
        )


@dataclass(frozen=True)
class DimensionTable:
    """Graded dimensions over a degree window, optionally with the classes behind them."""

    p: int
    n: Optional[int]
    window: Window
    dimensions: Mapping[int, int]
    module: str = ""
    basis: Optional[BigradedBasis] = None

    def dimension(self, degree: int) -> int:
        return self.dimensions.get(degree, 0)

    def nonzero(self) -> Dict[int, int]:
        return {degree: dim for degree, dim in self.dimensions.items() if dim}

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "p": self.p,
            "n": self.n,
            "window": self.window.to_dict(),
            "module": self.module,
            "dimensions": [
                {"degree": degree, "dimension": dim} for degree, dim in sorted(self.dimensions.items())
            ],
        }
        if self.basis is not None:
            result["classes"] = [c.to_dict() for c in self.basis.classes]
        return result


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification with its witnesses."""

    name: str
    passed: bool
    detail: str = ""
    witnesses: Tuple[Any, ...] = ()

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "witnesses": [list(w) if isinstance(w, tuple) else w for w in self.witnesses],
        }
