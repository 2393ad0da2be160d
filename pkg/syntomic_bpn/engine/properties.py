"""Randomized consistency checks for algebras and differential rules."""

from __future__ import annotations

import random
from typing import List, Sequence, Tuple

from ..algebra.bigraded import AlgebraPresentation, Element, Monomial
from .models import DifferentialRule

__all__ = ['koszul_violations', 'leibniz_violations', 'leibniz_applies']


def koszul_violations(
    algebra: AlgebraPresentation, monomials: Sequence[Monomial], rng: random.Random, samples: int
) -> List[Tuple[str, str]]:
    """Pairs where ``xy != (-1)^{|x||y|} yx``."""
    failures = []
    if not monomials:
        return failures
    for _ in range(samples):
        x, y = rng.choice(monomials), rng.choice(monomials)
        sign = -1 if (algebra.monomial_bidegree(x)[0] * algebra.monomial_bidegree(y)[0]) % 2 else 1
        if algebra.multiply(x, y) != algebra.multiply(y, x).scale(sign):
            failures.append((algebra.label(x), algebra.label(y)))
    return failures


def leibniz_applies(algebra: AlgebraPresentation, rule: DifferentialRule, monomial: Monomial) -> bool:
    """A rule ``g^q -> image`` is a derivation only on exponents divisible by ``q``."""
    for assignment in rule.assignments:
        if monomial.exponents[algebra.index(assignment.generator)] % assignment.power:
            return False
    return True


def leibniz_violations(
    algebra: AlgebraPresentation,
    rule: DifferentialRule,
    monomials: Sequence[Monomial],
    rng: random.Random,
    samples: int,
) -> List[Tuple[str, str]]:
    """Pairs where ``d(xy) != d(x)y + (-1)^{|x|} x d(y)``."""
    eligible = [m for m in monomials if leibniz_applies(algebra, rule, m)]
    failures = []
    if not eligible:
        return failures
    p = algebra.p
    for _ in range(samples):
        x, y = rng.choice(eligible), rng.choice(eligible)
        product = algebra.multiply(x, y)
        left = Element.zero(p)
        for monomial, coefficient in product.terms:
            left = left + rule.apply(algebra, monomial).scale(coefficient)
        sign = -1 if algebra.monomial_bidegree(x)[0] % 2 else 1
        right = algebra.multiply_elements(rule.apply(algebra, x), Element.single(p, y)) + algebra.multiply_elements(
            Element.single(p, x), rule.apply(algebra, y)
        ).scale(sign)
        if left != right:
            failures.append((algebra.label(x), algebra.label(y)))
    return failures
