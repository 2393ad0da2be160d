"""Controllers for syntomic cohomology of BP⟨n⟩ and its v_{n+1}-periodic extension."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from ..algebra.linalg_fp import cokernel_basis, kernel_basis
from ..config import Window
from ..engine.models import CellCounts, DifferentialShift
from ..engine.runner import no_room_report
from ..exceptions import ErrorCode, SyntomicError
from ..models import BasisClass, BigradedBasis, CheckResult, DimensionTable
from .base import BaseController, WindowLike
from .generators import (
    PARTIAL_BIDEGREE,
    lambda_degree,
    partial_label,
    product_label,
    top_degree,
    v_degree,
    xi_bidegree,
)
from .prismatic import NygaardDecomposition

__all__ = [
    'SyntomicController',
    'SyntomicLedger',
    'periodic_counts',
    'v_label',
]

logger = logging.getLogger(__name__)


def v_label(n: int, k: int, label: str) -> str:
    """``v_{n+1}^k · label``, e.g. ``v3^2λ1``; the unit is dropped once a power appears."""
    if k == 0:
        return label
    prefix = f"v{n + 1}" if k == 1 else f"v{n + 1}^{k}"
    return prefix if label == "1" else prefix + label


def periodic_counts(generators: BigradedBasis, period: int, copies: int) -> Dict[Tuple[int, int, int], int]:
    """Cells ``(degree + k·period, weight, k)`` of ``v^k g`` for ``0 <= k <= copies``."""
    counts: Dict[Tuple[int, int, int], int] = {}
    for generator in generators:
        for k in range(copies + 1):
            cell = (generator.degree + k * period, generator.adams_weight, k)
            counts[cell] = counts.get(cell, 0) + 1
    return counts


@dataclass(frozen=True)
class SyntomicLedger:
    """Kernel and cokernel of ``can - φ`` labeled by the Nygaard pieces they come from."""

    kernel: BigradedBasis
    cokernel: BigradedBasis
    decomposition: NygaardDecomposition

    def kernel_pieces(self) -> Dict[str, List[str]]:
        pieces: Dict[str, List[str]] = {}
        for c in self.kernel:
            pieces.setdefault(c.piece or "", []).append(c.label)
        return pieces

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kernel": [c.to_dict() for c in self.kernel],
            "cokernel": [c.to_dict() for c in self.cokernel],
            "decomposition": self.decomposition.to_dict(),
        }


class SyntomicController(BaseController):
    """Controller for syntomic cohomology mod ``(p, v_1, ..., v_n)``."""

    @staticmethod
    def syntomic_dimension(p: int, n: int) -> int:
        """``2^{n+2} + 2^n (n+1)(p-1)``."""
        if n < 0:
            return 2 ** (n + 2)
        return 2 ** (n + 2) + 2**n * (n + 1) * (p - 1)

    @staticmethod
    def degree_range(p: int, n: int) -> Tuple[int, int]:
        return -1, sum(2 * p**i for i in range(1, n + 2)) - n - 1

    def syntomic_generators(self, p: int, n: int) -> BigradedBasis:
        """Closed-form classes: ``λ_S``, ``∂λ_S`` and ``λ_S Ξ_{j,d}`` with ``j ∉ S``."""
        self._check_parameters(p, n)
        heights = list(range(1, n + 2))
        classes: List[BasisClass] = []
        for size in range(len(heights) + 1):
            for subset in combinations(heights, size):
                degree = sum(lambda_degree(p, j) for j in subset)
                label = product_label(subset)
                classes.append(BasisClass(label, degree, size, piece="A00"))
                classes.append(
                    BasisClass(
                        partial_label(label),
                        degree + PARTIAL_BIDEGREE[0],
                        size + PARTIAL_BIDEGREE[1],
                        piece="∂",
                    )
                )
        for j in heights:
            others = [s for s in heights if s != j]
            for size in range(len(others) + 1):
                for subset in combinations(others, size):
                    base = sum(lambda_degree(p, s) for s in subset)
                    for d in range(1, p):
                        degree, weight = xi_bidegree(p, j, d)
                        classes.append(
                            BasisClass(product_label(subset, (j, d)), degree + base, weight + size, piece="Ξ")
                        )
        classes.sort(key=lambda c: (c.degree, c.adams_weight, c.label))
        low, high = self.degree_range(p, n)
        return BigradedBasis(p, n, Window((low, high)), tuple(classes), {"module": "syntomic generators"})

    def _windows(self, p: int, n: int, window: Optional[WindowLike]) -> Tuple[Window, Window]:
        report = self._window(window) if window is not None else Window(self.degree_range(p, n))
        computed = report.with_degree(report.low, report.high + 1)
        return report, computed

    def syntomic_ledger(self, p: int, n: int, window: Optional[WindowLike] = None) -> SyntomicLedger:
        """Kernel and cokernel of ``can - φ`` over the window."""
        self._check_parameters(p, n)
        report, computed = self._windows(p, n, window)
        prismatic = self.calculator.prismatic
        blocks = prismatic.can_phi_matrices(p, n, computed)
        _, decomposition = prismatic.tc_minus_page(p, n, computed)
        kernel: List[BasisClass] = []
        cokernel: List[BasisClass] = []
        for (degree, weight), block in sorted(blocks.items()):
            difference = block.difference
            if report.contains(degree, weight):
                for vector in kernel_basis(difference):
                    leading = block.source[int(vector.nonzero()[0][-1])]
                    kernel.append(
                        BasisClass(
                            leading.label, degree, weight, piece=leading.piece, detected_by=leading.detected_by
                        )
                    )
            if report.contains(degree - 1, weight + 1):
                representatives, _ = cokernel_basis(difference)
                for vector in representatives:
                    cokernel.append(block.target[int(vector.nonzero()[0][-1])])
        logger.debug(
            "can - φ for p=%d n=%d over %s: kernel %d, cokernel %d", p, n, report, len(kernel), len(cokernel)
        )
        return SyntomicLedger(
            kernel=BigradedBasis(p, n, report, tuple(kernel)),
            cokernel=BigradedBasis(p, n, computed, tuple(cokernel)),
            decomposition=decomposition,
        )

    def syntomic(self, p: int, n: int, window: Optional[WindowLike] = None) -> BigradedBasis:
        """Syntomic cohomology mod ``(p, v_1, ..., v_n)`` as labeled classes."""
        ledger = self.syntomic_ledger(p, n, window)
        report = ledger.kernel.window
        classes = list(ledger.kernel.classes)
        for c in ledger.cokernel:
            classes.append(
                BasisClass(
                    partial_label(c.label),
                    c.degree + PARTIAL_BIDEGREE[0],
                    c.adams_weight + PARTIAL_BIDEGREE[1],
                    piece="∂",
                )
            )
        classes.sort(key=lambda c: (c.degree, c.adams_weight, c.label))
        basis = BigradedBasis(p, n, report, tuple(classes), {"module": "syntomic cohomology"})

        expected = self.syntomic_generators(p, n).restrict(report)
        missing = sorted(expected.signature() - basis.signature())
        extra = sorted(basis.signature() - expected.signature())
        if missing or extra:
            raise SyntomicError(
                f"syntomic classes disagree with the closed form: missing {missing}, extra {extra}",
                ErrorCode.VERIFICATION_FAILED,
                {"missing": missing, "extra": extra},
            )
        return basis

    def vn1_bockstein_gap_check(self, p: int, n: int) -> CheckResult:
        """No ``v_{n+1}``-Bockstein differential can start on a generator."""
        self._check_parameters(p, n)
        if n < 0:
            raise SyntomicError(
                "v_0 has degree 0, so degrees cannot separate the p-Bockstein; use n >= 0",
                ErrorCode.PRECONDITION,
                {"n": n},
            )
        generators = self.syntomic_generators(p, n)
        period = v_degree(p, n)
        low, high = self.degree_range(p, n)
        copies = (high - low + 1) // period + 1
        counts = CellCounts(periodic_counts(generators, period, copies))
        candidates = [
            candidate
            for candidate in no_room_report(counts, DifferentialShift.bockstein(), range(1, copies + 1))
            if candidate.source[2] == 0
        ]
        return CheckResult(
            name=f"v{n + 1}-bockstein-gap(p={p},n={n})",
            passed=not candidates,
            detail=f"{len(generators)} generators, |v{n + 1}| = {period}, {len(candidates)} candidate differentials",
            witnesses=tuple(candidate.to_dict() for candidate in candidates),
        )

    def mod_vn_table(self, p: int, n: int, window: Optional[WindowLike] = None) -> DimensionTable:
        """Dimensions of the free ``F_p[v_{n+1}]``-module on the syntomic generators."""
        check = self.vn1_bockstein_gap_check(p, n)
        if not check.passed:
            raise SyntomicError(
                f"v{n + 1}-Bockstein gap check failed", ErrorCode.NO_ROOM_FAILED, {"witnesses": list(check.witnesses)}
            )
        period = v_degree(p, n)
        low, high = self.degree_range(p, n)
        report = self._window(window) if window is not None else Window((low, high + period))
        generators = self.syntomic_generators(p, n)
        classes: List[BasisClass] = []
        dimensions = {degree: 0 for degree in range(report.low, report.high + 1)}
        copies = max(0, (report.high - low) // period)
        for k in range(copies + 1):
            for generator in generators:
                degree = generator.degree + k * period
                if not report.contains(degree, generator.adams_weight):
                    continue
                dimensions[degree] += 1
                classes.append(
                    BasisClass(v_label(n, k, generator.label), degree, generator.adams_weight, piece=generator.piece)
                )
        classes.sort(key=lambda c: (c.degree, c.adams_weight, c.label))
        basis = BigradedBasis(p, n, report, tuple(classes))
        return DimensionTable(p, n, report, dimensions, module=f"F_p[v{n + 1}]", basis=basis)
