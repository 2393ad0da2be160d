"""Page turning, Leibniz closure and no-room analysis."""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Mapping, Optional, Protocol, Tuple

import numpy as np

from ..algebra.linalg_fp import FpMatrix, homology_basis, rank, rref, solve_columns
from ..config import Window
from ..exceptions import ErrorCode, SyntomicError
from .models import (
    Cell,
    CellState,
    DifferentialRule,
    DifferentialShift,
    LogEntry,
    NoRoomCandidate,
    Page,
    SpectralRun,
    SpectralSequence,
)

__all__ = [
    "initial_page",
    "leibniz_extend",
    "differential_log",
    "turn_page",
    "run",
    "no_room_report",
]

logger = logging.getLogger(__name__)


class _HasDimensions(Protocol):
    def dimensions(self) -> Mapping[Cell, int]: ...


def _echelon_reversed(vectors: np.ndarray, p: int) -> np.ndarray:
    """Row basis whose pivots are the last nonzero entries, zero in all other rows."""
    if vectors.shape[0] == 0:
        return vectors.reshape(0, vectors.shape[1])
    reduced, pivots = rref(FpMatrix(p, vectors[:, ::-1]))
    return np.ascontiguousarray(reduced.entries[: len(pivots), ::-1])


def _reduce_modulo(vectors: np.ndarray, boundaries: np.ndarray, p: int) -> np.ndarray:
    work = vectors.copy()
    for row in boundaries:
        pivot = int(np.nonzero(row)[0][-1])
        factors = work[:, pivot].copy()
        if factors.any():
            work = (work - np.outer(factors, row)) % p
    return work


def _normalize(reps: np.ndarray, boundaries: np.ndarray, p: int) -> np.ndarray:
    expected = reps.shape[0]
    normalized = _echelon_reversed(_reduce_modulo(reps, boundaries, p), p)
    if normalized.shape[0] != expected:
        raise SyntomicError(
            "representatives became dependent modulo boundaries",
            ErrorCode.DIMENSION_MISMATCH,
            {"expected": expected, "found": int(normalized.shape[0])},
        )
    return normalized


def initial_page(
    sequence: SpectralSequence,
    report: Window,
    compute: Optional[Window] = None,
    max_monomials: Optional[int] = None,
) -> Page:
    """E_1 page over the computation window, one identity basis per cell."""
    degree, weight, filtration = sequence.margins()
    required = report.expand(degree, weight, filtration)
    if compute is None:
        compute = required
    elif not compute.covers(required):
        raise SyntomicError(
            f"computation window {compute.to_dict()} does not cover report window "
            f"{report.to_dict()} plus margins ({degree}, {weight}, {filtration}); enlarge it",
            ErrorCode.WINDOW_TOO_SMALL,
            {"required": required.to_dict()},
        )
    algebra = sequence.algebra
    monomials = algebra.basis_in_window(
        compute.degree, compute.weight, compute.filtration, max_count=max_monomials
    )
    grouped: Dict[Cell, List] = {}
    for monomial in monomials:
        grouped.setdefault(algebra.cell(monomial), []).append(monomial)
    cells = {}
    for cell, members in grouped.items():
        members.sort(key=lambda m: m.exponents)
        width = len(members)
        cells[cell] = CellState(
            monomials=tuple(members),
            reps=np.eye(width, dtype=np.int64),
            boundaries=np.zeros((0, width), dtype=np.int64),
        )
    logger.debug(
        "%s: E_1 has %d monomials in %d cells over %s",
        sequence.name, len(monomials), len(cells), compute.to_dict(),
    )
    return Page(1, algebra, sequence.shift, compute, report, cells)


def leibniz_extend(rule: DifferentialRule, page: Page) -> Dict[Cell, FpMatrix]:
    """Matrices of ``d_r`` in representative coordinates, keyed by source cell."""
    if rule.page != page.r:
        raise SyntomicError(
            f"rule for page {rule.page} applied to page {page.r}", ErrorCode.PRECONDITION
        )
    algebra = page.algebra
    p = algebra.p
    cache: Dict = {}
    matrices: Dict[Cell, FpMatrix] = {}
    for cell, state in page.cells.items():
        if not state.dimension:
            continue
        target = page.shift.target(cell, page.r)
        target_state = page.cells.get(target)
        index = (
            {monomial: i for i, monomial in enumerate(target_state.monomials)}
            if target_state is not None
            else {}
        )
        width = target_state.width if target_state is not None else 0
        images = np.zeros((state.dimension, width), dtype=np.int64)
        escaped = None
        nonzero = False
        for row_index, row in enumerate(state.reps):
            for position in np.nonzero(row)[0]:
                monomial = state.monomials[int(position)]
                image = cache.get(monomial)
                if image is None:
                    image = rule.apply(algebra, monomial)
                    cache[monomial] = image
                for term, coefficient in image.terms:
                    nonzero = True
                    if algebra.cell(term) != target:
                        raise SyntomicError(
                            f"d_{page.r}({algebra.label(monomial)}) has term {algebra.label(term)} "
                            f"at {algebra.cell(term)}, expected {target}",
                            ErrorCode.BIDEGREE_MISMATCH,
                        )
                    slot = index.get(term)
                    if slot is None:
                        escaped = term
                        continue
                    images[row_index, slot] = (
                        images[row_index, slot] + int(row[position]) * coefficient
                    ) % p
        if not nonzero:
            continue
        if escaped is not None:
            if page.is_trusted(cell):
                raise SyntomicError(
                    f"d_{page.r} from {cell} reaches {algebra.label(escaped)} outside the "
                    f"computation window; enlarge the window",
                    ErrorCode.WINDOW_TOO_SMALL,
                    {"source": list(cell), "target": list(target)},
                )
            logger.debug("d_%d from edge cell %s leaves the window; truncated", page.r, cell)
            continue
        if target_state is None or not target_state.dimension or not images.any():
            continue
        span = np.vstack([target_state.reps, target_state.boundaries])
        solution = solve_columns(FpMatrix(p, span.T), FpMatrix(p, images.T))
        if solution is None:
            if page.is_trusted(cell):
                raise SyntomicError(
                    f"d_{page.r} from {cell} is not a cycle modulo boundaries at {target}",
                    ErrorCode.COMPOSITION_NONZERO,
                    {"source": list(cell), "target": list(target)},
                )
            logger.debug("d_%d from edge cell %s is inconsistent; truncated", page.r, cell)
            continue
        block = solution.entries[: target_state.dimension, :]
        if block.any():
            matrices[cell] = FpMatrix(p, block)
    return matrices


def _trusted_edge(page: Page, source: Cell, target: Cell) -> bool:
    return page.is_trusted(source) or page.is_trusted(target)


def differential_log(page: Page) -> List[LogEntry]:
    """Log entries for the nonzero matrices of a page, with the leading terms hit."""
    p = page.algebra.p
    entries = []
    for source in sorted(page.matrices):
        matrix = page.matrices[source]
        target = page.shift.target(source, page.r)
        target_state = page.cells[target]
        images = _echelon_reversed((matrix.entries.T @ target_state.reps) % p, p)
        leading = tuple(target_state.monomials[int(np.nonzero(row)[0][-1])] for row in images)
        hits = tuple(page.algebra.label(monomial) for monomial in leading)
        entries.append(
            LogEntry(
                page=page.r,
                source=source,
                target=target,
                rank=rank(matrix),
                trusted=_trusted_edge(page, source, target),
                hits=hits,
                hit_monomials=leading,
            )
        )
    return entries


def turn_page(page: Page) -> Page:
    """Homology of every cell with respect to the page's matrices."""
    p = page.algebra.p
    shift = page.shift
    matrices = dict(page.matrices)
    for cell in sorted(set(matrices) | {shift.target(c, page.r) for c in matrices}):
        d_out = matrices.get(cell)
        d_in = matrices.get(shift.source(cell, page.r))
        if d_out is None or d_in is None:
            continue
        if not (d_out @ d_in).is_zero():
            if page.is_trusted(cell):
                raise SyntomicError(
                    f"d_{page.r} squares to a nonzero map at {cell}",
                    ErrorCode.COMPOSITION_NONZERO,
                    {"cell": list(cell), "page": page.r},
                )
            logger.debug("dropping d_%d from edge cell %s: d.d != 0", page.r, cell)
            del matrices[cell]

    removed = 0
    cells: Dict[Cell, CellState] = {}
    for cell, state in page.cells.items():
        d_out = matrices.get(cell)
        d_in = matrices.get(shift.source(cell, page.r))
        if d_out is None and d_in is None:
            cells[cell] = state
            continue
        size = state.dimension
        incoming = d_in if d_in is not None else FpMatrix.zeros(p, size, 0)
        outgoing = d_out if d_out is not None else FpMatrix.zeros(p, 0, size)
        vectors, _ = homology_basis(incoming, outgoing)
        width = state.width
        if vectors:
            reps = (np.vstack(vectors) @ state.reps) % p
        else:
            reps = np.zeros((0, width), dtype=np.int64)
        boundaries = state.boundaries
        if d_in is not None:
            fresh = (d_in.entries.T @ state.reps) % p
            boundaries = _echelon_reversed(np.vstack([boundaries, fresh]), p)
        reps = _normalize(reps, boundaries, p)
        removed += size - reps.shape[0]
        cells[cell] = CellState(state.monomials, reps, boundaries)

    expected = 2 * sum(rank(matrix) for matrix in matrices.values())
    if removed != expected:
        raise SyntomicError(
            f"page {page.r}: {removed} classes vanished but the ranks account for {expected}",
            ErrorCode.DIMENSION_MISMATCH,
            {"page": page.r},
        )
    return Page(page.r + 1, page.algebra, page.shift, page.window, page.report, cells)


def _r_extent(sequence: SpectralSequence, page: Page) -> int:
    dimensions = page.dimensions()
    shift = sequence.shift
    if not dimensions:
        return 0
    extents = []
    if shift.filtration_per_page:
        values = [cell[2] for cell in dimensions]
        extents.append((max(values) - min(values)) // abs(shift.filtration_per_page))
    if shift.weight_per_page:
        values = [cell[1] for cell in dimensions]
        extents.append((max(values) - min(values) + abs(shift.weight)) // abs(shift.weight_per_page))
    return max(extents) if extents else (sequence.pages[-1] if sequence.pages else 0)


def run(
    sequence: SpectralSequence,
    window: Window,
    compute: Optional[Window] = None,
    max_monomials: Optional[int] = None,
) -> SpectralRun:
    """Turn every registered page, then scan later pages for room to differ."""
    page = initial_page(sequence, window, compute, max_monomials)
    log: List[LogEntry] = []
    dimensions = [(page.r, page.total_dimension())]
    for rule in sequence.rules:
        page = page.advance_to(rule.page)
        page = page.with_differentials(leibniz_extend(rule, page))
        entries = differential_log(page)
        for entry in entries:
            logger.debug(
                "%s d_%d %s -> %s rank %d", sequence.name, entry.page, entry.source, entry.target, entry.rank
            )
        log.extend(entries)
        page = turn_page(page)
        dimensions.append((page.r, page.total_dimension()))

    effective = [entry.page for entry in log if entry.trusted]
    collapse_page = max(effective) + 1 if effective else 1
    last = sequence.pages[-1] if sequence.pages else 0
    r_max = sequence.r_max if sequence.r_max is not None else _r_extent(sequence, page)
    candidates = no_room_report(page, sequence.shift, range(last + 1, r_max + 1))
    logger.info(
        "%s: E_inf has %d classes in the report window, collapse at page %d, %d no-room candidates",
        sequence.name, sum(page.dimensions().values()), collapse_page, len(candidates),
    )
    return SpectralRun(
        sequence=sequence,
        e_infinity=page,
        log=tuple(log),
        collapse_page=collapse_page,
        no_room=tuple(candidates),
        page_dimensions=tuple(dimensions),
    )


def no_room_report(
    page: _HasDimensions, shift: DifferentialShift, r_range: Iterable[int]
) -> List[NoRoomCandidate]:
    """Every ``(r, source, target)`` with nonzero dimension on both sides."""
    dimensions = {cell: dim for cell, dim in page.dimensions().items() if dim}
    pages = sorted(set(r_range))
    if not pages or not dimensions:
        return []
    allowed = set(pages)
    by_degree: Dict[int, List[Cell]] = {}
    for cell in dimensions:
        by_degree.setdefault(cell[0], []).append(cell)
    found: List[Tuple[int, Cell, Cell]] = []
    for source in dimensions:
        targets = by_degree.get(source[0] + shift.degree, [])
        if shift.filtration_per_page or shift.weight_per_page:
            for target in targets:
                if shift.filtration_per_page:
                    step, per_page = target[2] - source[2], shift.filtration_per_page
                else:
                    step, per_page = target[1] - source[1] - shift.weight, shift.weight_per_page
                if step % per_page:
                    continue
                r = step // per_page
                if r in allowed and shift.target(source, r) == target:
                    found.append((r, source, target))
        else:
            for r in pages:
                target = shift.target(source, r)
                if target in dimensions:
                    found.append((r, source, target))
    found.sort()
    return [NoRoomCandidate(r, source, target) for r, source, target in found]
