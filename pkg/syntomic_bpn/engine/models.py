"""Data types for trigraded spectral sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..algebra.bigraded import AlgebraPresentation, Element, GeneratorKind, Monomial
from ..algebra.linalg_fp import FpMatrix
from ..config import Window
from ..exceptions import ErrorCode, SyntomicError
from ..models import BasisClass, BigradedBasis

__all__ = [
    "Cell",
    "DifferentialShift",
    "FactorImage",
    "DifferentialRule",
    "TrigradedClass",
    "CellState",
    "CellCounts",
    "Page",
    "SpectralSequence",
    "LogEntry",
    "NoRoomCandidate",
    "SpectralRun",
]

Cell = Tuple[int, int, int]


@dataclass(frozen=True)
class DifferentialShift:
    """Cell offset of ``d_r``: ``(degree, weight + r*weight_per_page, r*filtration_per_page)``."""

    degree: int
    weight: int
    weight_per_page: int = 0
    filtration_per_page: int = 0

    @classmethod
    def bockstein(cls) -> DifferentialShift:
        """``d_r: (n, s, f) -> (n-1, s+1, f+r)``."""
        return cls(degree=-1, weight=1, weight_per_page=0, filtration_per_page=1)

    @classmethod
    def motivic(cls) -> DifferentialShift:
        """``d_r: (n, s) -> (n-1, s+r)``."""
        return cls(degree=-1, weight=0, weight_per_page=1, filtration_per_page=0)

    def delta(self, r: int) -> Cell:
        return self.degree, self.weight + r * self.weight_per_page, r * self.filtration_per_page

    def target(self, cell: Cell, r: int) -> Cell:
        dd, dw, df = self.delta(r)
        return cell[0] + dd, cell[1] + dw, cell[2] + df

    def source(self, cell: Cell, r: int) -> Cell:
        dd, dw, df = self.delta(r)
        return cell[0] - dd, cell[1] - dw, cell[2] - df

    def to_dict(self) -> Dict[str, int]:
        return {
            "degree": self.degree,
            "weight": self.weight,
            "weight_per_page": self.weight_per_page,
            "filtration_per_page": self.filtration_per_page,
        }


@dataclass(frozen=True)
class FactorImage:
    """Assignment ``generator^power -> image``.

    On a monomial containing ``generator^e`` the assignment contributes
    ``(e // power) * generator^(e - power) * image`` in the generator's slot,
    with the Koszul sign of the factors to its left.
    """

    generator: str
    image: Element
    power: int = 1

    def __post_init__(self):
        if self.power < 1:
            raise SyntomicError(
                f"power of '{self.generator}' must be positive", ErrorCode.PRECONDITION
            )


@dataclass(frozen=True)
class DifferentialRule:
    """Page-indexed symbolic differential, extended by the Leibniz rule."""

    page: int
    assignments: Tuple[FactorImage, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(self.assignments))
        if self.page < 1:
            raise SyntomicError(f"page {self.page} must be at least 1", ErrorCode.PRECONDITION)

    def check(self, algebra: AlgebraPresentation, shift: DifferentialShift) -> None:
        """Every image must sit exactly one ``d_r`` step from its source."""
        for assignment in self.assignments:
            position = algebra.index(assignment.generator)
            generator = algebra.generators[position]
            if generator.kind is GeneratorKind.EXTERIOR and assignment.power != 1:
                raise SyntomicError(
                    f"exterior generator '{generator.name}' only admits power 1",
                    ErrorCode.PRECONDITION,
                )
            source = algebra.unit().replace(position, assignment.power)
            expected = shift.target(algebra.cell(source), self.page)
            for monomial, _ in assignment.image.terms:
                algebra.validate(monomial)
                actual = algebra.cell(monomial)
                if actual != expected:
                    raise SyntomicError(
                        f"d_{self.page}({algebra.label(source)}) = {algebra.label(monomial)} "
                        f"sits at {actual}, expected {expected}",
                        ErrorCode.BIDEGREE_MISMATCH,
                        {"page": self.page, "source": list(algebra.cell(source)), "target": list(actual)},
                    )

    def apply(self, algebra: AlgebraPresentation, monomial: Monomial) -> Element:
        """Leibniz expansion of the rule on one E_1 monomial."""
        p = algebra.p
        total = Element.zero(p)
        for assignment in self.assignments:
            position = algebra.index(assignment.generator)
            exponent = monomial.exponents[position]
            coefficient = (exponent // assignment.power) % p
            if coefficient == 0:
                continue
            width = len(monomial)
            prefix = Monomial(monomial.exponents[:position] + (0,) * (width - position))
            rest = Monomial((0,) * position + (exponent - assignment.power,) + (0,) * (width - position - 1))
            suffix = Monomial((0,) * (position + 1) + monomial.exponents[position + 1:])
            if algebra.monomial_bidegree(prefix)[0] % 2:
                coefficient = -coefficient
            term = algebra.multiply_elements(
                algebra.multiply(prefix, rest), assignment.image
            )
            term = algebra.multiply_elements(term, Element.single(p, suffix))
            total = total + term.scale(coefficient)
        return total


@dataclass(frozen=True)
class TrigradedClass:
    """A surviving class named by the leading monomial of its representative."""

    monomial: Monomial
    degree: int
    adams_weight: int
    filtration: int
    label: str
    representative: Element

    @property
    def cell(self) -> Cell:
        return self.degree, self.adams_weight, self.filtration

    def to_basis_class(self, piece: Optional[str] = None) -> BasisClass:
        return BasisClass(
            label=self.label,
            degree=self.degree,
            adams_weight=self.adams_weight,
            filtration=self.filtration,
            piece=piece,
        )


@dataclass(frozen=True, eq=False)
class CellState:
    """E_1 monomials of one cell with the current representatives and boundaries.

    ``reps`` and ``boundaries`` are row vectors over ``monomials``.
    """

    monomials: Tuple[Monomial, ...]
    reps: np.ndarray
    boundaries: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.reps.shape[0])

    @property
    def width(self) -> int:
        return len(self.monomials)


@dataclass(frozen=True)
class CellCounts:
    """Plain dimension table usable wherever a page's dimensions are expected."""

    counts: Mapping[Cell, int]

    def dimensions(self) -> Dict[Cell, int]:
        return {cell: dim for cell, dim in self.counts.items() if dim}


@dataclass(frozen=True, eq=False)
class Page:
    """One page of a spectral sequence restricted to a computation window."""

    r: int
    algebra: AlgebraPresentation
    shift: DifferentialShift
    window: Window
    report: Window
    cells: Mapping[Cell, CellState]
    matrices: Mapping[Cell, FpMatrix] = field(default_factory=dict)

    def is_trusted(self, cell: Cell) -> bool:
        return self.report.contains(*cell)

    def dimensions(self, trusted_only: bool = True) -> Dict[Cell, int]:
        return {
            cell: state.dimension
            for cell, state in self.cells.items()
            if state.dimension and (not trusted_only or self.is_trusted(cell))
        }

    def total_dimension(self) -> int:
        return sum(state.dimension for state in self.cells.values())

    def advance_to(self, r: int) -> Page:
        return Page(r, self.algebra, self.shift, self.window, self.report, self.cells)

    def with_differentials(self, matrices: Mapping[Cell, FpMatrix]) -> Page:
        return Page(self.r, self.algebra, self.shift, self.window, self.report, self.cells, dict(matrices))

    def classes(self, trusted_only: bool = True) -> List[TrigradedClass]:
        p = self.algebra.p
        found: List[TrigradedClass] = []
        for cell in sorted(self.cells):
            state = self.cells[cell]
            if not state.dimension or (trusted_only and not self.is_trusted(cell)):
                continue
            for row in state.reps:
                support = np.nonzero(row)[0]
                leading = state.monomials[int(support[-1])]
                representative = Element.from_mapping(
                    p, {state.monomials[int(i)]: int(row[i]) for i in support}
                )
                found.append(
                    TrigradedClass(
                        monomial=leading,
                        degree=cell[0],
                        adams_weight=cell[1],
                        filtration=cell[2],
                        label=self.algebra.label(leading),
                        representative=representative,
                    )
                )
        found.sort(key=lambda c: (c.degree, c.adams_weight, c.filtration, c.monomial.exponents))
        return found


@dataclass(frozen=True)
class SpectralSequence:
    """Algebra, differential shift and page-indexed rules; at most one rule per page."""

    name: str
    algebra: AlgebraPresentation
    shift: DifferentialShift
    rules: Tuple[DifferentialRule, ...] = ()
    r_max: Optional[int] = None

    def __post_init__(self):
        ordered = tuple(sorted(self.rules, key=lambda rule: rule.page))
        pages = [rule.page for rule in ordered]
        if len(set(pages)) != len(pages):
            raise SyntomicError(
                f"more than one rule registered on a page: {pages}", ErrorCode.PRECONDITION
            )
        for rule in ordered:
            if rule.assignments and rule.assignments[0].image.p != self.algebra.p:
                raise SyntomicError("rule image over the wrong field", ErrorCode.PRECONDITION)
            rule.check(self.algebra, self.shift)
        object.__setattr__(self, "rules", ordered)

    @property
    def pages(self) -> List[int]:
        return [rule.page for rule in self.rules]

    def margins(self) -> Tuple[int, int, int]:
        """Degree, weight and filtration margins that keep a report window exact."""
        degree = sum(abs(self.shift.delta(r)[0]) for r in self.pages) + 1
        weight = sum(abs(self.shift.delta(r)[1]) for r in self.pages) + 1
        filtration = sum(abs(self.shift.delta(r)[2]) for r in self.pages) + 1
        return degree, weight, filtration


@dataclass(frozen=True)
class LogEntry:
    """One nonzero differential between two cells."""

    page: int
    source: Cell
    target: Cell
    rank: int
    trusted: bool = True
    hits: Tuple[str, ...] = ()
    hit_monomials: Tuple[Monomial, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "page": self.page,
            "source": list(self.source),
            "target": list(self.target),
            "rank": self.rank,
        }


@dataclass(frozen=True)
class NoRoomCandidate:
    """A page, source cell and target cell where both sides are nonzero."""

    r: int
    source: Cell
    target: Cell

    def to_dict(self) -> Dict[str, Any]:
        return {"r": self.r, "source": list(self.source), "target": list(self.target)}


@dataclass(frozen=True, eq=False)
class SpectralRun:
    """Result of running a spectral sequence over a report window."""

    sequence: SpectralSequence
    e_infinity: Page
    log: Tuple[LogEntry, ...]
    collapse_page: int
    no_room: Tuple[NoRoomCandidate, ...] = ()
    page_dimensions: Tuple[Tuple[int, int], ...] = ()

    @property
    def window(self) -> Window:
        return self.e_infinity.report

    def classes(self) -> List[TrigradedClass]:
        return self.e_infinity.classes()

    def trusted_log(self) -> List[LogEntry]:
        return [entry for entry in self.log if entry.trusted]

    def basis(self, n: Optional[int] = None, classes: Optional[Sequence[BasisClass]] = None) -> BigradedBasis:
        chosen = classes if classes is not None else [c.to_basis_class() for c in self.classes()]
        return BigradedBasis(
            p=self.sequence.algebra.p,
            n=n,
            window=self.window,
            classes=tuple(chosen),
            metadata={"sequence": self.sequence.name, "collapse_page": self.collapse_page},
        )

    def to_dict(self, n: Optional[int] = None) -> Dict[str, Any]:
        result = self.basis(n).to_dict()
        result["differentials"] = [entry.to_dict() for entry in self.trusted_log()]
        if self.no_room:
            result["no_room"] = [candidate.to_dict() for candidate in self.no_room]
        return result
