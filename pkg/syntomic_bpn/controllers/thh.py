"""Controllers for THH(BP⟨n⟩; F_p), the Hochschild-May spectral sequence and the Hodge-Tate square."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..algebra.bigraded import AlgebraPresentation, Element, GeneratorSpec, Monomial
from ..algebra.maps import MonomialMap
from ..config import Window
from ..engine.models import (
    DifferentialRule,
    DifferentialShift,
    FactorImage,
    SpectralRun,
    SpectralSequence,
)
from ..exceptions import ErrorCode, SyntomicError
from ..models import BasisClass, BigradedBasis, CheckResult
from .base import BaseController, WindowLike
from .generators import (
    epsilon_generator,
    lambda_generator,
    mu_generator,
    sigma_v_generator,
    t_generator,
)

__all__ = [
    'THHController',
    'HochschildMayResult',
    'HodgeTateSquare',
    'thh_algebra',
    'hochschild_may_sequence',
    'hodge_tate_sequence_definition',
]

logger = logging.getLogger(__name__)


def thh_algebra(p: int, n: int, epsilon: bool = False, laurent: bool = False) -> AlgebraPresentation:
    """``Λ(λ_1..λ_{n+1}) ⊗ F_p[μ^{p^{n+1}}]``, optionally with ``ε_{n+1}`` and ``μ`` inverted."""
    generators: List[GeneratorSpec] = [lambda_generator(p, j) for j in range(1, n + 2)]
    generators.append(mu_generator(p ** (n + 1), laurent=laurent))
    if epsilon:
        generators.append(epsilon_generator(p, n + 1))
    return AlgebraPresentation(p, tuple(generators))


def _fp_algebra(p: int, n: int, laurent: bool) -> AlgebraPresentation:
    """``F_p[μ]⟨ε_0..ε_{n+1}⟩``, the F_p side of the Hodge-Tate square."""
    generators = [mu_generator(1, laurent=laurent)]
    generators.extend(epsilon_generator(p, i) for i in range(0, n + 2))
    return AlgebraPresentation(p, tuple(generators))


def hochschild_may_sequence(p: int, n: int) -> SpectralSequence:
    """``Λ(σv_0..σv_n) ⊗ F_p[μ]`` with ``F_p[μ]`` split into base-p truncated factors.

    The factor ``μ_i = μ^{p^i}`` (``i <= n``) is truncated at ``p`` and
    ``d_{2p^i}(μ_i) = σv_i``; ``μ_{n+1} = μ^{p^{n+1}}`` stays polynomial.
    Logged pages are therefore ``2p^i``, two above the ``d_{2p^i - 2}`` indexing
    common in the literature; E∞ is the same under either numbering.
    """
    generators: List[GeneratorSpec] = [sigma_v_generator(p, i) for i in range(0, n + 1)]
    truncations: Dict[str, int] = {}
    for i in range(0, n + 1):
        generators.append(mu_generator(p**i, name=f"μ_{i}"))
        truncations[f"μ_{i}"] = p
    generators.append(mu_generator(p ** (n + 1), name=f"μ_{n + 1}"))
    algebra = AlgebraPresentation(p, tuple(generators), truncations)
    rules = [
        DifferentialRule(
            page=2 * p**i,
            assignments=(
                FactorImage(f"μ_{i}", Element.single(p, algebra.monomial({f"σv{i}": 1}))),
            ),
        )
        for i in range(0, n + 1)
    ]
    return SpectralSequence(
        name=f"hochschild-may(p={p},n={n})",
        algebra=algebra,
        shift=DifferentialShift.bockstein(),
        rules=tuple(rules),
    )


def hodge_tate_sequence_definition(p: int, n: int) -> SpectralSequence:
    """t-Bockstein on ``Λ(λ)[μ^{±p^{n+1}}]⟨ε_{n+1}⟩[t]`` with ``d_1(ε x) = t μ^{p^{n+1}} x``."""
    generators = [t_generator(laurent=False)]
    generators.extend(lambda_generator(p, j) for j in range(1, n + 2))
    generators.append(mu_generator(p ** (n + 1), laurent=True))
    generators.append(epsilon_generator(p, n + 1))
    algebra = AlgebraPresentation(p, tuple(generators))
    rule = DifferentialRule(
        page=1,
        assignments=(
            FactorImage(f"ε{n + 1}", Element.single(p, algebra.monomial({"t": 1, "μ": 1}))),
        ),
    )
    return SpectralSequence(
        name=f"hodge-tate(p={p},n={n})",
        algebra=algebra,
        shift=DifferentialShift.bockstein(),
        rules=(rule,),
    )


def _basis_from_monomials(
    algebra: AlgebraPresentation, monomials: List[Monomial], p: int, n: int, window: Window, **metadata: Any
) -> BigradedBasis:
    classes = []
    for monomial in sorted(monomials, key=algebra.sort_key):
        degree, weight = algebra.monomial_bidegree(monomial)
        classes.append(BasisClass(algebra.label(monomial), degree, weight))
    return BigradedBasis(p, n, window, tuple(classes), metadata)


def _image_label(target: AlgebraPresentation, image: Element) -> Optional[str]:
    if image.is_zero():
        return None
    parts = []
    for monomial, coefficient in image.terms:
        label = target.label(monomial)
        parts.append(label if coefficient == 1 else f"{coefficient}·{label}")
    return " + ".join(parts)


@dataclass(frozen=True, eq=False)
class HochschildMayResult:
    """Hochschild-May run with its E∞ translated into THH names."""

    sequence: SpectralSequence
    run: SpectralRun
    basis: BigradedBasis

    def to_dict(self) -> Dict[str, Any]:
        result = self.basis.to_dict()
        result["differentials"] = [entry.to_dict() for entry in self.run.trusted_log()]
        return result


@dataclass(frozen=True, eq=False)
class HodgeTateSquare:
    """The four corners and four edge maps, as label tables on window bases."""

    top_left: BigradedBasis
    top_right: BigradedBasis
    bottom_left: BigradedBasis
    bottom_right: BigradedBasis
    maps: Dict[str, Dict[str, Optional[str]]] = field(default_factory=dict)

    def image(self, edge: str) -> List[str]:
        """Distinct nonzero image labels of one edge map."""
        seen: List[str] = []
        for label in self.maps[edge].values():
            if label is not None and label not in seen:
                seen.append(label)
        return seen

    def to_dict(self) -> Dict[str, Any]:
        return {
            "corners": {
                "top_left": self.top_left.to_dict(),
                "top_right": self.top_right.to_dict(),
                "bottom_left": self.bottom_left.to_dict(),
                "bottom_right": self.bottom_right.to_dict(),
            },
            "maps": {edge: dict(table) for edge, table in self.maps.items()},
        }


class THHController(BaseController):
    """Controller for THH pages and the spectral sequences that compute them."""

    def thh_bpn_page(self, p: int, n: int, window: WindowLike) -> BigradedBasis:
        """Monomial basis of ``Λ(λ_1..λ_{n+1})[μ^{p^{n+1}}]`` in a window."""
        self._check_parameters(p, n)
        window = self._window(window)
        algebra = thh_algebra(p, n)
        monomials = algebra.basis_in_window(
            window.degree, window.weight, max_count=self.calculator.settings.max_monomials
        )
        return _basis_from_monomials(algebra, monomials, p, n, window, module="THH(BP<n>;F_p)")

    def hochschild_may(self, p: int, n: int, window: WindowLike) -> HochschildMayResult:
        """Run the Hochschild-May spectral sequence and name its E∞ classes."""
        self._check_parameters(p, n)
        window = self._window(window)
        sequence = hochschild_may_sequence(p, n)
        run = self._run(sequence, window)
        hm = sequence.algebra
        thh = thh_algebra(p, n)
        classes = []
        for found in run.classes():
            exponents = found.monomial.exponents
            lambdas = []
            for i in range(0, n + 1):
                pair = (exponents[hm.index(f"σv{i}")], exponents[hm.index(f"μ_{i}")])
                if pair == (1, p - 1):
                    lambdas.append(i + 1)
                elif pair != (0, 0):
                    raise SyntomicError(
                        f"E∞ class {found.label} is not a product of λ's and μ^{p ** (n + 1)}",
                        ErrorCode.VERIFICATION_FAILED,
                        {"label": found.label},
                    )
            named = {f"λ{j}": 1 for j in lambdas}
            named["μ"] = exponents[hm.index(f"μ_{n + 1}")]
            monomial = thh.monomial(named)
            classes.append(
                BasisClass(
                    label=thh.label(monomial),
                    degree=found.degree,
                    adams_weight=found.adams_weight,
                    detected_by=found.label,
                )
            )
        classes.sort(key=lambda c: (c.degree, c.adams_weight, c.label))
        basis = run.basis(n, classes)
        return HochschildMayResult(sequence, run, basis)

    def hodge_tate_square(self, p: int, n: int, window: WindowLike) -> HodgeTateSquare:
        """Corners and maps of the square inverting ``μ^{p^{n+1}}`` (top) and ``μ`` (bottom)."""
        self._check_parameters(p, n)
        window = self._window(window)
        limit = self.calculator.settings.max_monomials
        top_left = thh_algebra(p, n, epsilon=True)
        top_right = thh_algebra(p, n, epsilon=True, laurent=True)
        bottom_left = _fp_algebra(p, n, laurent=False)
        bottom_right = _fp_algebra(p, n, laurent=True)
        power = p ** (n + 1)
        epsilon = f"ε{n + 1}"
        identity = {name: {name: 1} for name in top_left.names}
        quotient = {"μ": {"μ": power}, epsilon: {epsilon: 1}}
        edges = {
            "top": MonomialMap("top", top_left, top_right, identity),
            "left": MonomialMap("left", top_left, bottom_left, quotient),
            "right": MonomialMap("right", top_right, bottom_right, quotient),
            "bottom": MonomialMap(
                "bottom", bottom_left, bottom_right, {name: {name: 1} for name in bottom_left.names}
            ),
        }
        corners = {}
        for name, algebra in (
            ("top_left", top_left),
            ("top_right", top_right),
            ("bottom_left", bottom_left),
            ("bottom_right", bottom_right),
        ):
            monomials = algebra.basis_in_window(window.degree, window.weight, max_count=limit)
            corners[name] = (algebra, monomials)

        maps: Dict[str, Dict[str, Optional[str]]] = {}
        for edge, source in (
            ("top", "top_left"),
            ("left", "top_left"),
            ("right", "top_right"),
            ("bottom", "bottom_left"),
        ):
            algebra, monomials = corners[source]
            mapping = edges[edge]
            maps[edge] = {
                algebra.label(m): _image_label(mapping.target, mapping.apply(m)) for m in monomials
            }

        for monomial in corners["top_left"][1]:
            down_then_across = edges["bottom"].apply_element(edges["left"].apply(monomial))
            across_then_down = edges["right"].apply_element(edges["top"].apply(monomial))
            if down_then_across != across_then_down:
                raise SyntomicError(
                    f"square does not commute on {top_left.label(monomial)}",
                    ErrorCode.VERIFICATION_FAILED,
                    {"label": top_left.label(monomial)},
                )
        logger.debug("hodge-tate square for p=%d n=%d commutes on %d classes", p, n, len(corners["top_left"][1]))
        bases = {
            name: _basis_from_monomials(algebra, monomials, p, n, window)
            for name, (algebra, monomials) in corners.items()
        }
        return HodgeTateSquare(
            top_left=bases["top_left"],
            top_right=bases["top_right"],
            bottom_left=bases["bottom_left"],
            bottom_right=bases["bottom_right"],
            maps=maps,
        )

    def hodge_tate_sequence(self, p: int, n: int, window: WindowLike) -> SpectralRun:
        """t-Bockstein from the μ-periodic THH; E∞ sits on the 0-line."""
        self._check_parameters(p, n)
        window = self._window(window)
        if window.filtration is None:
            window = window.with_filtration(0, 2)
        return self._run(hodge_tate_sequence_definition(p, n), window)

    def fp_comparison_check(self, p: int, n: int, window: WindowLike) -> CheckResult:
        """THH(BP⟨n⟩) → THH(F_p) is injective mod λ with image ``F_p[μ^{p^{n+1}}]⟨ε_{n+1}⟩``."""
        self._check_parameters(p, n)
        window = self._window(window)
        limit = self.calculator.settings.max_monomials
        source = thh_algebra(p, n, epsilon=True)
        target = _fp_algebra(p, n, laurent=False)
        power = p ** (n + 1)
        epsilon = f"ε{n + 1}"
        mapping = MonomialMap("left", source, target, {"μ": {"μ": power}, epsilon: {epsilon: 1}})
        lambdas = [source.index(f"λ{j}") for j in range(1, n + 2)]

        witnesses: List[Any] = []
        images: Dict[Monomial, str] = {}
        for monomial in source.basis_in_window(window.degree, window.weight, max_count=limit):
            image = mapping.apply(monomial)
            has_lambda = any(monomial.exponents[i] for i in lambdas)
            if has_lambda:
                if not image.is_zero():
                    witnesses.append(("λ-multiple not killed", source.label(monomial)))
                continue
            if len(image) != 1:
                witnesses.append(("not sent to a monomial", source.label(monomial)))
                continue
            (target_monomial, _), = image.terms
            if target_monomial in images:
                witnesses.append(("not injective", source.label(monomial), images[target_monomial]))
            images[target_monomial] = source.label(monomial)

        mu = target.index("μ")
        expected = {
            m
            for m in target.basis_in_window(window.degree, window.weight, max_count=limit)
            if m.exponents[mu] % power == 0
            and all(m.exponents[target.index(f"ε{i}")] == 0 for i in range(0, n + 1))
        }
        for missing in sorted(expected - set(images), key=target.sort_key):
            witnesses.append(("missing from image", target.label(missing)))
        for extra in sorted(set(images) - expected, key=target.sort_key):
            witnesses.append(("unexpected image", target.label(extra)))
        labels = [target.label(m) for m in sorted(images, key=target.sort_key)]
        return CheckResult(
            name=f"fp-comparison(p={p},n={n},{window})",
            passed=not witnesses,
            detail="image mod λ: " + ", ".join(labels),
            witnesses=tuple(witnesses),
        )