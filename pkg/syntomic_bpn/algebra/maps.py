"""Algebra maps sending each generator to a monomial or to zero."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..exceptions import ErrorCode, SyntomicError
from .bigraded import AlgebraPresentation, Element, Monomial

__all__ = ["MonomialMap"]


@dataclass(frozen=True)
class MonomialMap:
    """Multiplicative map ``source -> target``.

    ``images`` assigns to each source generator the exponents of a target
    monomial, or ``None`` for zero. Generators left out map to zero.
    """

    name: str
    source: AlgebraPresentation
    target: AlgebraPresentation
    images: Mapping[str, Optional[Mapping[str, int]]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "images", dict(self.images))
        if self.source.p != self.target.p:
            raise SyntomicError(f"{self.name}: source and target over different fields", ErrorCode.PRECONDITION)
        for generator, image in self.images.items():
            spec = self.source.generator(generator)
            if image is None:
                continue
            monomial = self.target.monomial(image)
            if self.target.monomial_bidegree(monomial) != (spec.degree, spec.adams_weight):
                raise SyntomicError(
                    f"{self.name}: {generator} and {self.target.label(monomial)} differ in bidegree",
                    ErrorCode.BIDEGREE_MISMATCH,
                )

    def apply(self, monomial: Monomial) -> Element:
        p = self.source.p
        result = Element.single(p, self.target.unit())
        for generator, exponent in zip(self.source.generators, monomial.exponents):
            if not exponent:
                continue
            image = self.images.get(generator.name)
            if image is None:
                return Element.zero(p)
            base = self.target.monomial(image)
            power = Monomial(tuple(exponent * value for value in base.exponents))
            if not self.target.is_valid(power):
                return Element.zero(p)
            result = self.target.multiply_elements(result, Element.single(p, power))
            if result.is_zero():
                return result
        return result

    def apply_element(self, element: Element) -> Element:
        total = Element.zero(self.source.p)
        for monomial, coefficient in element.terms:
            total = total + self.apply(monomial).scale(coefficient)
        return total
