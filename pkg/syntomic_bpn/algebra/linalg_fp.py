"""Exact linear algebra over the prime field F_p on numpy integer arrays.

Vectors are 1-d ``int64`` arrays with entries in ``[0, p-1]``. Matrices act on
column vectors, so a matrix with ``cols`` columns maps F_p^cols to F_p^rows.
All choices of basis are read off the reduced row echelon form, which keeps
kernels, cokernels and homology representatives reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ErrorCode, SyntomicError

__all__ = [
    "is_prime",
    "FpMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "cokernel_basis",
    "homology_basis",
    "solve_columns",
]


def is_prime(p: int) -> bool:
    """Trial-division primality test, plenty for desk-scale primes."""
    if p < 2:
        return False
    factor = 2
    while factor * factor <= p:
        if p % factor == 0:
            return False
        factor += 1
    return True


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Dense matrix over F_p; entries are stored reduced and read-only."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        if not is_prime(self.p):
            raise SyntomicError(f"modulus {self.p} is not prime", ErrorCode.PRECONDITION)
        data = np.array(self.entries, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise SyntomicError(
                f"expected a 2-d array, got shape {data.shape}", ErrorCode.PRECONDITION
            )
        data %= self.p
        data.setflags(write=False)
        object.__setattr__(self, "entries", data)

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> FpMatrix:
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> FpMatrix:
        if not rows:
            return cls.zeros(p, 0, cols or 0)
        return cls(p, np.array(rows, dtype=np.int64))

    @classmethod
    def from_columns(cls, p: int, columns: Sequence[np.ndarray], rows: int) -> FpMatrix:
        if not columns:
            return cls.zeros(p, rows, 0)
        return cls(p, np.column_stack(columns))

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not self.entries.any()

    def column(self, index: int) -> np.ndarray:
        return self.entries[:, index].copy()

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return (self.entries @ np.asarray(vector, dtype=np.int64)) % self.p

    def _check_same_field(self, other: FpMatrix) -> None:
        if other.p != self.p:
            raise SyntomicError(
                f"cannot combine matrices over F_{self.p} and F_{other.p}",
                ErrorCode.PRECONDITION,
            )

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        self._check_same_field(other)
        if self.cols != other.rows:
            raise SyntomicError(
                f"shape mismatch {self.shape} @ {other.shape}", ErrorCode.DIMENSION_MISMATCH
            )
        return FpMatrix(self.p, self.entries @ other.entries)

    def __add__(self, other: FpMatrix) -> FpMatrix:
        self._check_same_field(other)
        return FpMatrix(self.p, self.entries + other.entries)

    def __sub__(self, other: FpMatrix) -> FpMatrix:
        self._check_same_field(other)
        return FpMatrix(self.p, self.entries - other.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (
            self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    __hash__ = None  # type: ignore[assignment]

    def tolist(self) -> List[List[int]]:
        return self.entries.tolist()

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.shape}, entries={self.tolist()})"


def _reduce_rows(data: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Gauss-Jordan elimination in place on a working copy."""
    work = data.copy() % p
    rows, cols = work.shape
    pivots: List[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        candidates = np.nonzero(work[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            work[[row, pivot]] = work[[pivot, row]]
        inv = pow(int(work[row, col]), p - 2, p)
        work[row] = (work[row] * inv) % p
        others = np.nonzero(work[:, col])[0]
        for other in others:
            if other != row:
                work[other] = (work[other] - work[other, col] * work[row]) % p
        pivots.append(col)
        row += 1
    return work, pivots


def rref(m: FpMatrix) -> Tuple[FpMatrix, List[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    reduced, pivots = _reduce_rows(m.entries, m.p)
    return FpMatrix(m.p, reduced), pivots


def rank(m: FpMatrix) -> int:
    return len(_reduce_rows(m.entries, m.p)[1])


def kernel_basis(m: FpMatrix) -> List[np.ndarray]:
    """Basis of the null space, one vector per free column of the rref.

    The vector for free column ``f`` has a 1 at ``f``, zeros at the other free
    columns, and its remaining support on pivot columns left of ``f``.
    """
    p = m.p
    reduced, pivots = _reduce_rows(m.entries, p)
    pivot_set = set(pivots)
    basis: List[np.ndarray] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = np.zeros(m.cols, dtype=np.int64)
        vector[free] = 1
        for row, pivot_col in enumerate(pivots):
            vector[pivot_col] = (-reduced[row, free]) % p
        basis.append(vector)
    return basis


def cokernel_basis(m: FpMatrix) -> Tuple[List[np.ndarray], FpMatrix]:
    """Standard-basis complement of the column space plus the quotient map.

    Returns the representatives (codomain vectors) and a projection matrix
    ``P`` with ``P @ m == 0`` and ``P`` sending representative ``i`` to ``e_i``.
    """
    p = m.p
    reduced, pivots = _reduce_rows(m.entries.T, p)
    pivot_set = set(pivots)
    free = [index for index in range(m.rows) if index not in pivot_set]
    projection = np.zeros((len(free), m.rows), dtype=np.int64)
    representatives: List[np.ndarray] = []
    for slot, column in enumerate(free):
        projection[slot, column] = 1
        for row, pivot_col in enumerate(pivots):
            projection[slot, pivot_col] = (projection[slot, pivot_col] - reduced[row, column]) % p
        vector = np.zeros(m.rows, dtype=np.int64)
        vector[column] = 1
        representatives.append(vector)
    return representatives, FpMatrix(p, projection.reshape(len(free), m.rows))


def homology_basis(d_in: FpMatrix, d_out: FpMatrix) -> Tuple[List[np.ndarray], FpMatrix]:
    """Basis of ker(d_out)/im(d_in) with a projection defined on cycles.

    ``d_in`` maps into the middle space and ``d_out`` out of it. The returned
    projection sends a cycle to its coordinates in the returned classes.
    """
    p = d_out.p
    middle = d_out.cols
    if d_in.rows != middle:
        raise SyntomicError(
            f"d_in has {d_in.rows} rows but d_out has {middle} columns",
            ErrorCode.DIMENSION_MISMATCH,
        )
    if d_in.cols and d_out.rows and not (d_out @ d_in).is_zero():
        raise SyntomicError(
            "d_out . d_in is nonzero", ErrorCode.COMPOSITION_NONZERO,
            {"d_in": d_in.tolist(), "d_out": d_out.tolist()},
        )
    _, pivots = _reduce_rows(d_out.entries, p)
    pivot_set = set(pivots)
    free = [index for index in range(middle) if index not in pivot_set]
    cycles = kernel_basis(d_out)
    # Kernel coordinates of a cycle are its entries at the free columns.
    boundaries = FpMatrix(p, d_in.entries[free, :].reshape(len(free), d_in.cols))
    quotient_reps, quotient_projection = cokernel_basis(boundaries)
    vectors: List[np.ndarray] = []
    for rep in quotient_reps:
        vector = np.zeros(middle, dtype=np.int64)
        for coordinate, cycle in zip(rep, cycles):
            if coordinate:
                vector = (vector + int(coordinate) * cycle) % p
        vectors.append(vector)
    selector = np.zeros((len(free), middle), dtype=np.int64)
    for slot, column in enumerate(free):
        selector[slot, column] = 1
    projection = quotient_projection @ FpMatrix(p, selector.reshape(len(free), middle))
    return vectors, projection


def solve_columns(a: FpMatrix, b: FpMatrix) -> Optional[FpMatrix]:
    """One solution X of ``a @ X == b``, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise SyntomicError(
            f"cannot solve {a.shape} against {b.shape}", ErrorCode.DIMENSION_MISMATCH
        )
    p = a.p
    augmented = np.hstack([a.entries, b.entries])
    reduced, pivots = _reduce_rows(augmented, p)
    if any(pivot >= a.cols for pivot in pivots):
        return None
    solution = np.zeros((a.cols, b.cols), dtype=np.int64)
    for row, pivot_col in enumerate(pivots):
        solution[pivot_col] = reduced[row, a.cols:]
    return FpMatrix(p, solution)
