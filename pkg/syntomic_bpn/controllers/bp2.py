"""Controllers for TC and K of BP⟨2⟩ at primes p >= 5."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from ..config import Window
from ..engine.models import CellCounts, DifferentialShift
from ..engine.runner import no_room_report
from ..exceptions import ErrorCode, SyntomicError
from ..models import CheckResult, DimensionTable
from .base import BaseController, WindowLike
from .generators import v_degree
from .syntomic import periodic_counts

__all__ = ['BP2Controller', 'KTheoryTables', 'k_theory_corrections']

logger = logging.getLogger(__name__)

HEIGHT = 2
MIN_PRIME = 5
# Weight length of the only motivic differential that can occur.
MOTIVIC_LENGTH = 3


def k_theory_corrections(p: int) -> List[int]:
    """Degrees where ``K(BP⟨2⟩)`` has one more class than ``TC(BP⟨2⟩)``."""
    return sorted({2 * p - 3, 2 * p**2 - 3, 2 * p**2 + 2 * p - 4})


@dataclass(frozen=True)
class KTheoryTables:
    """``K(BP⟨2⟩)/(p, v_1, v_2)`` next to the TC table it is spliced from."""

    k: DimensionTable
    tc: DimensionTable
    v_inverted: DimensionTable

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k.to_dict(),
            "tc": self.tc.to_dict(),
            "v_inverted": self.v_inverted.to_dict(),
        }


class BP2Controller(BaseController):
    """Controller for the height-2 computations."""

    def _default_window(self, p: int) -> Window:
        low, high = self.calculator.syntomic.degree_range(p, HEIGHT)
        return Window((low, high + v_degree(p, HEIGHT)))

    def motivic_no_room(self, p: int) -> CheckResult:
        """Bidegree scan ruling out motivic differentials on the v3-periodic syntomic classes."""
        self._check_parameters(p, min_prime=MIN_PRIME)
        generators = self.calculator.syntomic.syntomic_generators(p, HEIGHT)
        period = v_degree(p, HEIGHT)
        low, high = self.calculator.syntomic.degree_range(p, HEIGHT)
        copies = (high - low + 1) // period + 2
        witnesses: List[Any] = []

        rows = sorted({g.adams_weight for g in generators})
        if rows[0] < 0 or rows[-1] > 4:
            witnesses.append({"rows": rows})

        counts = periodic_counts(generators, period, copies)
        weights = {(degree, weight) for degree, weight, _ in counts}
        for k in range(1, copies + 1):
            for degree in (k * period - 1, k * period):
                if (degree, 3) in weights:
                    witnesses.append({"occupied": [degree, 3]})

        flattened: Dict = {}
        for (degree, weight, _), count in counts.items():
            cell = (degree, weight, 0)
            flattened[cell] = flattened.get(cell, 0) + count
        lengths = range(MOTIVIC_LENGTH, MOTIVIC_LENGTH + 1)
        candidates = no_room_report(CellCounts(flattened), DifferentialShift.motivic(), lengths)
        witnesses.extend(candidate.to_dict() for candidate in candidates)
        logger.debug("motivic no-room scan at p=%d: %d witnesses", p, len(witnesses))
        return CheckResult(
            name=f"motivic-no-room(p={p})",
            passed=not witnesses,
            detail=f"|v3| = {period}, rows {rows}, {len(candidates)} candidate differentials of length {MOTIVIC_LENGTH}",
            witnesses=tuple(witnesses),
        )

    def tc_bp2(self, p: int, window: Optional[WindowLike] = None) -> DimensionTable:
        """Graded dimensions of ``TC(BP⟨2⟩)/(p, v_1, v_2)``, a free ``F_p[v_3]``-module."""
        check = self.motivic_no_room(p)
        if not check.passed:
            raise SyntomicError(
                f"motivic no-room scan failed at p={p}",
                ErrorCode.NO_ROOM_FAILED,
                {"witnesses": list(check.witnesses)},
            )
        report = self._window(window) if window is not None else self._default_window(p)
        table = self.calculator.syntomic.mod_vn_table(p, HEIGHT, report)
        return DimensionTable(p, HEIGHT, table.window, table.dimensions, module="TC(BP<2>)/(p,v1,v2)", basis=table.basis)

    def k_bp2(self, p: int, window: Optional[WindowLike] = None) -> KTheoryTables:
        """``K(BP⟨2⟩)/(p, v_1, v_2)`` and its ``v_3``-inverted counterpart."""
        tc = self.tc_bp2(p, window)
        report = tc.window
        corrections = set(k_theory_corrections(p))
        dimensions = {}
        for degree, dimension in tc.dimensions.items():
            if degree < 0:
                dimensions[degree] = 0
            else:
                dimensions[degree] = dimension + (1 if degree in corrections else 0)
        k = DimensionTable(p, HEIGHT, report, dimensions, module="K(BP<2>)/(p,v1,v2)")

        period = v_degree(p, HEIGHT)
        generators = self.calculator.syntomic.syntomic_generators(p, HEIGHT)
        inverted = {
            degree: sum(1 for g in generators if (degree - g.degree) % period == 0)
            for degree in range(report.low, report.high + 1)
        }
        v_inverted = DimensionTable(p, HEIGHT, report, inverted, module="K(BP<2>)/(p,v1,v2)[v3^-1]")
        return KTheoryTables(k=k, tc=tc, v_inverted=v_inverted)
