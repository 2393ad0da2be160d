"""Controllers for TP and TC⁻ through the t-Bockstein spectral sequence, and the maps can and φ."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..algebra.bigraded import AlgebraPresentation, Element
from ..algebra.linalg_fp import FpMatrix
from ..config import Window
from ..engine.models import (
    DifferentialRule,
    DifferentialShift,
    FactorImage,
    SpectralRun,
    SpectralSequence,
    TrigradedClass,
)
from ..exceptions import ErrorCode, SyntomicError
from ..models import BasisClass, BigradedBasis
from .base import BaseController, WindowLike
from .generators import (
    epsilon_generator,
    lambda_degree,
    lambda_generator,
    mu_generator,
    product_label,
    t_generator,
)

__all__ = [
    'PrismaticController',
    'NygaardDecomposition',
    'CanPhiBlock',
    't_bockstein_sequence',
    'PIECES',
    'A_LABELINGS',
]

logger = logging.getLogger(__name__)

PIECES = ("A00", "μ", "Ξ", "t")

# The two A10/A11 conventions in circulation, reported side by side.
A_LABELINGS = {
    "decomposition": {"A00": "A00", "μ": "A01", "t": "A10", "Ξ": "A11"},
    "kernel": {"A00": "A00", "μ": "A01", "Ξ": "A10", "t": "A11"},
}


def t_bockstein_sequence(p: int, n: int, periodic: bool) -> SpectralSequence:
    """t-Bockstein on ``Λ(λ)[μ^{p^{n+1}}]⟨ε_{n+1}⟩ ⊗ F_p[t]`` (``t^{±1}`` when periodic).

    ``d_1(ε_{n+1}) = t μ^{p^{n+1}}`` and ``d_{p^m}(t^{p^{m-1}}) = t^{p^m + p^{m-1}} λ_m``
    for ``m = 1..n+1``.
    """
    generators = [t_generator(laurent=periodic)]
    generators.extend(lambda_generator(p, j) for j in range(1, n + 2))
    generators.append(mu_generator(p ** (n + 1)))
    generators.append(epsilon_generator(p, n + 1))
    algebra = AlgebraPresentation(p, tuple(generators))
    rules = [
        DifferentialRule(
            page=1,
            assignments=(
                FactorImage(f"ε{n + 1}", Element.single(p, algebra.monomial({"t": 1, "μ": 1}))),
            ),
        )
    ]
    for m in range(1, n + 2):
        image = algebra.monomial({"t": p**m + p ** (m - 1), f"λ{m}": 1})
        rules.append(
            DifferentialRule(
                page=p**m,
                assignments=(FactorImage("t", Element.single(p, image), power=p ** (m - 1)),),
            )
        )
    kind = "tp" if periodic else "tc-minus"
    return SpectralSequence(
        name=f"{kind}(p={p},n={n})",
        algebra=algebra,
        shift=DifferentialShift.bockstein(),
        rules=tuple(rules),
    )


@dataclass(frozen=True)
class NygaardDecomposition:
    """The four labeled pieces of the TC⁻ E∞ page."""

    a00: BigradedBasis
    mu_piece: BigradedBasis
    xi_piece: BigradedBasis
    t_piece: BigradedBasis

    def piece(self, name: str) -> BigradedBasis:
        return {"A00": self.a00, "μ": self.mu_piece, "Ξ": self.xi_piece, "t": self.t_piece}[name]

    def labeled(self, convention: str = "decomposition") -> Dict[str, BigradedBasis]:
        """Pieces keyed by ``A00``..``A11`` under one of ``A_LABELINGS``."""
        names = A_LABELINGS[convention]
        return {names[piece]: self.piece(piece) for piece in PIECES}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pieces": {piece: self.piece(piece).labels for piece in PIECES},
            "labelings": A_LABELINGS,
        }


@dataclass(frozen=True, eq=False)
class CanPhiBlock:
    """``can`` and ``φ`` at one bidegree, columns indexed by TC⁻ classes, rows by TP classes."""

    bidegree: Tuple[int, int]
    source: Tuple[BasisClass, ...]
    target: Tuple[BasisClass, ...]
    can: FpMatrix
    phi: FpMatrix

    @property
    def difference(self) -> FpMatrix:
        return self.can - self.phi


class PrismaticController(BaseController):
    """Controller for the periodic and negative t-Bockstein spectral sequences."""

    @staticmethod
    def report_window(p: int, n: int, window: Window) -> Window:
        """Attach the t-filtration range whose classes can reach the degree window."""
        if window.filtration is not None:
            return window
        top = sum(lambda_degree(p, j) for j in range(1, n + 2))
        low = (-window.high) // 2
        high = -((window.low - top) // 2)
        return window.with_filtration(low, high)

    def tp_run(self, p: int, n: int, window: WindowLike) -> SpectralRun:
        self._check_parameters(p, n)
        window = self.report_window(p, n, self._window(window))
        return self._run(t_bockstein_sequence(p, n, periodic=True), window)

    def tc_minus_run(self, p: int, n: int, window: WindowLike) -> SpectralRun:
        self._check_parameters(p, n)
        window = self.report_window(p, n, self._window(window))
        return self._run(t_bockstein_sequence(p, n, periodic=False), window)

    def tp_page(self, p: int, n: int, window: WindowLike) -> BigradedBasis:
        """E∞ of the periodic t-Bockstein, ``Λ(λ)[t^{±p^{n+1}}]`` in the window."""
        run = self.tp_run(p, n, window)
        return run.basis(n)

    def _classify(self, p: int, n: int, algebra: AlgebraPresentation, found: TrigradedClass) -> BasisClass:
        """Assign a TC⁻ E∞ class to its Nygaard piece and name it."""
        power = p ** (n + 1)
        exponents = algebra.exponent_map(found.monomial)
        if exponents.get(f"ε{n + 1}"):
            raise SyntomicError(
                f"ε survives to E∞ in {found.label}", ErrorCode.VERIFICATION_FAILED, {"label": found.label}
            )
        a = exponents.get("t", 0)
        k = exponents.get("μ", 0)
        lambdas = [j for j in range(1, n + 2) if exponents.get(f"λ{j}")]
        if a == 0:
            piece = "A00" if k == 0 else "μ"
            return found.to_basis_class(piece)
        if k == 0 and a % power == 0:
            return found.to_basis_class("t")
        if k == 0 and a < power:
            for j in lambdas:
                scale = p ** (j - 1)
                if a % scale == 0 and 0 < a // scale < p:
                    rest = [s for s in lambdas if s != j]
                    return BasisClass(
                        label=product_label(rest, (j, a // scale)),
                        degree=found.degree,
                        adams_weight=found.adams_weight,
                        filtration=found.filtration,
                        piece="Ξ",
                        detected_by=found.label,
                    )
        raise SyntomicError(
            f"TC⁻ class {found.label} fits no Nygaard piece", ErrorCode.VERIFICATION_FAILED, {"label": found.label}
        )

    def _tc_minus_classes(self, p: int, n: int, run: SpectralRun) -> List[Tuple[TrigradedClass, BasisClass]]:
        algebra = run.sequence.algebra
        return [(found, self._classify(p, n, algebra, found)) for found in run.classes()]

    def tc_minus_page(self, p: int, n: int, window: WindowLike) -> Tuple[BigradedBasis, NygaardDecomposition]:
        """E∞ of the t-Bockstein for TC⁻ with its Nygaard decomposition."""
        run = self.tc_minus_run(p, n, window)
        named = [basis_class for _, basis_class in self._tc_minus_classes(p, n, run)]
        basis = run.basis(n, named)
        pieces = {
            piece: BigradedBasis(p, n, basis.window, tuple(c for c in named if c.piece == piece), {"piece": piece})
            for piece in PIECES
        }
        decomposition = NygaardDecomposition(
            a00=pieces["A00"], mu_piece=pieces["μ"], xi_piece=pieces["Ξ"], t_piece=pieces["t"]
        )
        metadata = dict(basis.metadata)
        metadata["labelings"] = A_LABELINGS
        return BigradedBasis(p, n, basis.window, basis.classes, metadata), decomposition

    def nygaard_crossing_classes(self, p: int, n: int, window: WindowLike) -> BigradedBasis:
        """TP classes in filtration >= 0 hit from negative filtration.

        Page-1 hits are the μ-piece and hits on pages ``p^m`` are the Ξ-piece.
        """
        run = self.tp_run(p, n, window)
        algebra = run.sequence.algebra
        classes: List[BasisClass] = []
        for entry in run.trusted_log():
            if entry.source[2] >= 0 or entry.target[2] < 0:
                continue
            if not run.window.contains(*entry.target):
                continue
            for monomial in entry.hit_monomials:
                degree, weight, filtration = algebra.cell(monomial)
                label = algebra.label(monomial)
                if entry.page == 1:
                    classes.append(BasisClass(label, degree, weight, filtration, piece="μ"))
                    continue
                exponents = algebra.exponent_map(monomial)
                m = next(j for j in range(1, n + 2) if p**j == entry.page)
                lambdas = [j for j in range(1, n + 2) if exponents.get(f"λ{j}") and j != m]
                xi = (m, exponents.get("t", 0) // p ** (m - 1))
                classes.append(
                    BasisClass(
                        product_label(lambdas, xi), degree, weight, filtration, piece="Ξ", detected_by=label
                    )
                )
        classes.sort(key=lambda c: (c.degree, c.adams_weight, c.label))
        return BigradedBasis(p, n, run.window, tuple(classes), {"sequence": run.sequence.name})

    def can_phi_matrices(self, p: int, n: int, window: WindowLike) -> Dict[Tuple[int, int], CanPhiBlock]:
        """Matrices of ``can`` and ``φ`` from TC⁻ E∞ to TP E∞, one block per bidegree."""
        tc_run = self.tc_minus_run(p, n, window)
        tp_run = self.tp_run(p, n, window)
        power = p ** (n + 1)
        tc_algebra = tc_run.sequence.algebra
        mu = tc_algebra.index("μ")
        t = tc_algebra.index("t")

        sources: Dict[Tuple[int, int], List[Tuple[TrigradedClass, BasisClass]]] = {}
        for found, named in self._tc_minus_classes(p, n, tc_run):
            sources.setdefault((found.degree, found.adams_weight), []).append((found, named))
        targets: Dict[Tuple[int, int], List[TrigradedClass]] = {}
        for found in tp_run.classes():
            targets.setdefault((found.degree, found.adams_weight), []).append(found)

        blocks: Dict[Tuple[int, int], CanPhiBlock] = {}
        for bidegree in sorted(set(sources) | set(targets)):
            columns = sources.get(bidegree, [])
            rows = targets.get(bidegree, [])
            index = {found.monomial.exponents: i for i, found in enumerate(rows)}
            can = [[0] * len(columns) for _ in rows]
            phi = [[0] * len(columns) for _ in rows]
            for column, (found, named) in enumerate(columns):
                exponents = found.monomial.exponents
                if named.piece in ("A00", "t"):
                    self._set_entry(can, index, exponents, column, bidegree, named)
                if named.piece == "A00":
                    self._set_entry(phi, index, exponents, column, bidegree, named)
                elif named.piece == "μ":
                    image = list(exponents)
                    image[t] = -power * exponents[mu]
                    image[mu] = 0
                    self._set_entry(phi, index, tuple(image), column, bidegree, named)
            blocks[bidegree] = CanPhiBlock(
                bidegree=bidegree,
                source=tuple(named for _, named in columns),
                target=tuple(found.to_basis_class() for found in rows),
                can=FpMatrix.from_rows(p, can, cols=len(columns)),
                phi=FpMatrix.from_rows(p, phi, cols=len(columns)),
            )
        logger.debug("can/φ for p=%d n=%d: %d bidegree blocks", p, n, len(blocks))
        return blocks

    @staticmethod
    def _set_entry(
        matrix: List[List[int]],
        index: Dict[Tuple[int, ...], int],
        exponents: Tuple[int, ...],
        column: int,
        bidegree: Tuple[int, int],
        named: BasisClass,
    ) -> None:
        row: Optional[int] = index.get(exponents)
        if row is None:
            raise SyntomicError(
                f"image of {named.label} at {bidegree} is missing from the TP window; "
                f"the TC⁻ and TP windows disagree",
                ErrorCode.DIMENSION_MISMATCH,
                {"label": named.label, "bidegree": list(bidegree)},
            )
        matrix[row][column] = 1
