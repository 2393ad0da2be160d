"""Monomial model of bigraded-commutative algebras over F_p.

An algebra is a tensor product of exterior, (optionally truncated) polynomial
and Laurent factors. Monomials are exponent vectors aligned with the
generator list; every generator carries a degree, an Adams weight and a
filtration contribution, all additive over exponents.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..exceptions import ErrorCode, SyntomicError
from .linalg_fp import is_prime

__all__ = [
    "GeneratorKind",
    "GeneratorSpec",
    "Monomial",
    "Element",
    "AlgebraPresentation",
]

logger = logging.getLogger(__name__)

Interval = Tuple[int, int]
Bidegree = Tuple[int, int]
Cell = Tuple[int, int, int]


class GeneratorKind(Enum):
    """Kinds of tensor factors."""

    EXTERIOR = "exterior"
    POLYNOMIAL = "polynomial"
    LAURENT = "laurent"


@dataclass(frozen=True)
class GeneratorSpec:
    """A named generator with its bidegree.

    ``symbol`` and ``label_scale`` only affect labels: a generator standing
    for ``μ^8`` is declared with symbol ``μ`` and scale 8, so that its square
    prints as ``μ^16``.
    """

    name: str
    kind: GeneratorKind
    degree: int
    adams_weight: int
    filtration: int = 0
    symbol: Optional[str] = None
    label_scale: int = 1

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", GeneratorKind(self.kind))
        if not self.name:
            raise SyntomicError("generator name must be nonempty", ErrorCode.PRECONDITION)
        if self.kind is GeneratorKind.LAURENT and self.degree == 0:
            raise SyntomicError(
                f"laurent generator '{self.name}' must have nonzero degree",
                ErrorCode.PRECONDITION,
                {"generator": self.name},
            )
        if self.label_scale < 1:
            raise SyntomicError(
                f"label scale of '{self.name}' must be positive", ErrorCode.PRECONDITION
            )

    @property
    def display(self) -> str:
        return self.symbol or self.name


@dataclass(frozen=True, order=True)
class Monomial:
    """Exponent vector aligned with an algebra's generator list."""

    exponents: Tuple[int, ...]

    def __getitem__(self, index: int) -> int:
        return self.exponents[index]

    def __len__(self) -> int:
        return len(self.exponents)

    def replace(self, index: int, value: int) -> Monomial:
        exponents = list(self.exponents)
        exponents[index] = value
        return Monomial(tuple(exponents))


@dataclass(frozen=True)
class Element:
    """F_p-linear combination of monomials with sorted, nonzero terms."""

    p: int
    terms: Tuple[Tuple[Monomial, int], ...] = ()

    @classmethod
    def from_mapping(cls, p: int, coefficients: Mapping[Monomial, int]) -> Element:
        cleaned = sorted(
            (monomial, coefficient % p)
            for monomial, coefficient in coefficients.items()
            if coefficient % p
        )
        return cls(p, tuple(cleaned))

    @classmethod
    def zero(cls, p: int) -> Element:
        return cls(p, ())

    @classmethod
    def single(cls, p: int, monomial: Monomial, coefficient: int = 1) -> Element:
        return cls.from_mapping(p, {monomial: coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, monomial: Monomial) -> int:
        for candidate, coefficient in self.terms:
            if candidate == monomial:
                return coefficient
        return 0

    def monomials(self) -> List[Monomial]:
        return [monomial for monomial, _ in self.terms]

    def __add__(self, other: Element) -> Element:
        merged: Dict[Monomial, int] = dict(self.terms)
        for monomial, coefficient in other.terms:
            merged[monomial] = merged.get(monomial, 0) + coefficient
        return Element.from_mapping(self.p, merged)

    def scale(self, factor: int) -> Element:
        return Element.from_mapping(
            self.p, {monomial: coefficient * factor for monomial, coefficient in self.terms}
        )

    def __neg__(self) -> Element:
        return self.scale(-1)

    def __sub__(self, other: Element) -> Element:
        return self + (-other)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class _Constraint:
    coefficients: Tuple[int, ...]
    low: int
    high: int


@dataclass(frozen=True)
class AlgebraPresentation:
    """Tensor product of exterior, polynomial and Laurent factors over F_p."""

    p: int
    generators: Tuple[GeneratorSpec, ...]
    power_constraints: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "power_constraints", dict(self.power_constraints))
        if not is_prime(self.p):
            raise SyntomicError(f"p={self.p} is not prime", ErrorCode.PRECONDITION)
        names = [generator.name for generator in self.generators]
        if len(set(names)) != len(names):
            raise SyntomicError(
                f"generator names are not unique: {names}", ErrorCode.PRECONDITION
            )
        for generator in self.generators:
            if self.p != 2:
                odd = generator.degree % 2 == 1
                if generator.kind is GeneratorKind.EXTERIOR and not odd:
                    raise SyntomicError(
                        f"exterior generator '{generator.name}' needs odd degree",
                        ErrorCode.PRECONDITION,
                        {"generator": generator.name},
                    )
                if generator.kind is not GeneratorKind.EXTERIOR and odd:
                    raise SyntomicError(
                        f"{generator.kind.value} generator '{generator.name}' needs even degree",
                        ErrorCode.PRECONDITION,
                        {"generator": generator.name},
                    )
        for name, bound in self.power_constraints.items():
            if name not in names:
                raise SyntomicError(
                    f"truncation for unknown generator '{name}'", ErrorCode.PRECONDITION
                )
            if bound < 1:
                raise SyntomicError(
                    f"truncation bound for '{name}' must be at least 1", ErrorCode.PRECONDITION
                )
            if self.generators[names.index(name)].kind is not GeneratorKind.POLYNOMIAL:
                raise SyntomicError(
                    f"only polynomial generators can be truncated, not '{name}'",
                    ErrorCode.PRECONDITION,
                )

    # ------------------------------------------------------------------
    # generators and monomials
    # ------------------------------------------------------------------
    @property
    def names(self) -> List[str]:
        return [generator.name for generator in self.generators]

    def index(self, name: str) -> int:
        for position, generator in enumerate(self.generators):
            if generator.name == name:
                return position
        raise SyntomicError(f"unknown generator '{name}'", ErrorCode.PRECONDITION)

    def generator(self, name: str) -> GeneratorSpec:
        return self.generators[self.index(name)]

    def unit(self) -> Monomial:
        return Monomial((0,) * len(self.generators))

    def monomial(self, exponents: Optional[Mapping[str, int]] = None, **named: int) -> Monomial:
        """Build a validated monomial from generator-name exponents."""
        values = [0] * len(self.generators)
        for name, exponent in {**(exponents or {}), **named}.items():
            values[self.index(name)] = int(exponent)
        monomial = Monomial(tuple(values))
        self.validate(monomial)
        return monomial

    def exponent_map(self, monomial: Monomial) -> Dict[str, int]:
        return {
            generator.name: exponent
            for generator, exponent in zip(self.generators, monomial.exponents)
            if exponent
        }

    def _bound(self, position: int) -> Optional[int]:
        return self.power_constraints.get(self.generators[position].name)

    def is_valid(self, monomial: Monomial) -> bool:
        if len(monomial) != len(self.generators):
            return False
        for position, (generator, exponent) in enumerate(zip(self.generators, monomial.exponents)):
            if generator.kind is GeneratorKind.EXTERIOR and exponent not in (0, 1):
                return False
            if generator.kind is GeneratorKind.POLYNOMIAL:
                if exponent < 0:
                    return False
                bound = self._bound(position)
                if bound is not None and exponent >= bound:
                    return False
        return True

    def validate(self, monomial: Monomial) -> None:
        if not self.is_valid(monomial):
            raise SyntomicError(
                f"exponents {monomial.exponents} are not a monomial of {self.names}",
                ErrorCode.PRECONDITION,
            )

    # ------------------------------------------------------------------
    # gradings
    # ------------------------------------------------------------------
    def monomial_bidegree(self, monomial: Monomial) -> Bidegree:
        degree = 0
        weight = 0
        for generator, exponent in zip(self.generators, monomial.exponents):
            degree += exponent * generator.degree
            weight += exponent * generator.adams_weight
        return degree, weight

    def filtration(self, monomial: Monomial) -> int:
        return sum(
            exponent * generator.filtration
            for generator, exponent in zip(self.generators, monomial.exponents)
        )

    def cell(self, monomial: Monomial) -> Cell:
        degree, weight = self.monomial_bidegree(monomial)
        return degree, weight, self.filtration(monomial)

    def sort_key(self, monomial: Monomial) -> Tuple[int, Tuple[int, ...]]:
        """Canonical order: degree first, then the exponent vector."""
        return self.monomial_bidegree(monomial)[0], monomial.exponents

    # ------------------------------------------------------------------
    # multiplication
    # ------------------------------------------------------------------
    def koszul_sign(self, a: Monomial, b: Monomial) -> int:
        """Sign of moving the odd factors of ``b`` past those of ``a`` on their right."""
        if self.p == 2:
            return 1
        swaps = 0
        odd_suffix = 0
        for position in range(len(self.generators) - 1, -1, -1):
            odd = self.generators[position].degree % 2
            if odd:
                swaps += (b.exponents[position] % 2) * odd_suffix
                odd_suffix += a.exponents[position] % 2
        return -1 if swaps % 2 else 1

    def multiply(self, a: Monomial, b: Monomial) -> Element:
        exponents = []
        for position, generator in enumerate(self.generators):
            total = a.exponents[position] + b.exponents[position]
            if generator.kind is GeneratorKind.EXTERIOR and total > 1:
                return Element.zero(self.p)
            bound = self._bound(position)
            if bound is not None and total >= bound:
                return Element.zero(self.p)
            exponents.append(total)
        return Element.single(self.p, Monomial(tuple(exponents)), self.koszul_sign(a, b))

    def multiply_elements(self, x: Element, y: Element) -> Element:
        result: Dict[Monomial, int] = {}
        for left, left_coefficient in x.terms:
            for right, right_coefficient in y.terms:
                for monomial, sign in self.multiply(left, right).terms:
                    result[monomial] = result.get(monomial, 0) + sign * left_coefficient * right_coefficient
        return Element.from_mapping(self.p, result)

    def element(self, terms: Iterable[Tuple[Mapping[str, int], int]]) -> Element:
        """Element from ``(exponents-by-name, coefficient)`` pairs."""
        result: Dict[Monomial, int] = {}
        for exponents, coefficient in terms:
            monomial = self.monomial(exponents)
            result[monomial] = result.get(monomial, 0) + coefficient
        return Element.from_mapping(self.p, result)

    # ------------------------------------------------------------------
    # labels
    # ------------------------------------------------------------------
    def label(self, monomial: Monomial) -> str:
        """Human-readable name such as ``t^4λ3`` or ``λ1μ^8``; the unit is ``1``."""
        totals: Dict[str, int] = {}
        for generator, exponent in zip(self.generators, monomial.exponents):
            if exponent:
                key = generator.display
                totals[key] = totals.get(key, 0) + exponent * generator.label_scale
        parts = []
        for symbol, total in totals.items():
            if total == 0:
                continue
            parts.append(symbol if total == 1 else f"{symbol}^{total}")
        return "".join(parts) or "1"

    # ------------------------------------------------------------------
    # windowed enumeration
    # ------------------------------------------------------------------
    def _initial_bounds(self) -> List[List[Optional[int]]]:
        bounds: List[List[Optional[int]]] = []
        for position, generator in enumerate(self.generators):
            if generator.kind is GeneratorKind.EXTERIOR:
                bounds.append([0, 1])
            elif generator.kind is GeneratorKind.POLYNOMIAL:
                bound = self._bound(position)
                bounds.append([0, None if bound is None else bound - 1])
            else:
                bounds.append([None, None])
        return bounds

    @staticmethod
    def _term_range(coefficient: int, bound: Sequence[Optional[int]]) -> Tuple[Optional[int], Optional[int]]:
        lo, hi = bound
        if coefficient == 0:
            return 0, 0
        if coefficient > 0:
            return (
                None if lo is None else coefficient * lo,
                None if hi is None else coefficient * hi,
            )
        return (
            None if hi is None else coefficient * hi,
            None if lo is None else coefficient * lo,
        )

    def _propagate(self, constraints: Sequence[_Constraint], bounds: List[List[Optional[int]]]) -> bool:
        """Tighten exponent bounds; False when the window is provably empty."""
        for _ in range(256):
            changed = False
            for constraint in constraints:
                ranges = [
                    self._term_range(c, bound) for c, bound in zip(constraint.coefficients, bounds)
                ]
                for position, coefficient in enumerate(constraint.coefficients):
                    if coefficient == 0:
                        continue
                    rest_min: Optional[int] = 0
                    rest_max: Optional[int] = 0
                    for other, (lo, hi) in enumerate(ranges):
                        if other == position:
                            continue
                        rest_min = None if rest_min is None or lo is None else rest_min + lo
                        rest_max = None if rest_max is None or hi is None else rest_max + hi
                    # c * e lies in [low - rest_max, high - rest_min]
                    new_lo, new_hi = bounds[position]
                    if rest_max is not None:
                        target = constraint.low - rest_max
                        if coefficient > 0:
                            candidate = _ceil_div(target, coefficient)
                            if new_lo is None or candidate > new_lo:
                                new_lo = candidate
                        else:
                            candidate = target // coefficient
                            if new_hi is None or candidate < new_hi:
                                new_hi = candidate
                    if rest_min is not None:
                        target = constraint.high - rest_min
                        if coefficient > 0:
                            candidate = target // coefficient
                            if new_hi is None or candidate < new_hi:
                                new_hi = candidate
                        else:
                            candidate = _ceil_div(target, coefficient)
                            if new_lo is None or candidate > new_lo:
                                new_lo = candidate
                    if [new_lo, new_hi] != bounds[position]:
                        bounds[position] = [new_lo, new_hi]
                        ranges[position] = self._term_range(coefficient, bounds[position])
                        changed = True
                    if new_lo is not None and new_hi is not None and new_lo > new_hi:
                        return False
            if not changed:
                break
        return True

    def basis_in_window(
        self,
        degree: Interval,
        weight: Optional[Interval] = None,
        filtration: Optional[Interval] = None,
        max_count: Optional[int] = None,
    ) -> List[Monomial]:
        """All monomials with degree (and optional weight/filtration) in range.

        Raises INFINITE_WINDOW when some exponent stays unbounded after
        propagating the window through the gradings, and WINDOW_LIMIT when the
        enumeration exceeds ``max_count``.
        """
        constraints = [
            _Constraint(tuple(g.degree for g in self.generators), degree[0], degree[1])
        ]
        if weight is not None:
            constraints.append(
                _Constraint(tuple(g.adams_weight for g in self.generators), weight[0], weight[1])
            )
        if filtration is not None:
            constraints.append(
                _Constraint(tuple(g.filtration for g in self.generators), filtration[0], filtration[1])
            )
        bounds = self._initial_bounds()
        if not self._propagate(constraints, bounds):
            return []
        unbounded = [
            self.generators[position].name
            for position, (lo, hi) in enumerate(bounds)
            if lo is None or hi is None
        ]
        if unbounded:
            raise SyntomicError(
                f"window {degree} leaves exponents of {unbounded} unbounded",
                ErrorCode.INFINITE_WINDOW,
                {"generators": unbounded},
            )
        ranges: List[Tuple[int, int]] = [(int(lo), int(hi)) for lo, hi in bounds]  # type: ignore[arg-type]
        count = len(ranges)
        # suffix extremes per constraint for pruning
        suffix: List[List[Tuple[int, int]]] = []
        for constraint in constraints:
            table = [(0, 0)] * (count + 1)
            for position in range(count - 1, -1, -1):
                lo, hi = self._term_range(constraint.coefficients[position], ranges[position])
                table[position] = (table[position + 1][0] + lo, table[position + 1][1] + hi)  # type: ignore[operator]
            suffix.append(table)

        found: List[Monomial] = []
        exponents = [0] * count

        def descend(position: int, partial: List[int]) -> None:
            for index, constraint in enumerate(constraints):
                lo, hi = suffix[index][position]
                if partial[index] + lo > constraint.high or partial[index] + hi < constraint.low:
                    return
            if position == count:
                monomial = Monomial(tuple(exponents))
                found.append(monomial)
                if max_count is not None and len(found) > max_count:
                    raise SyntomicError(
                        f"more than {max_count} monomials in window {degree}",
                        ErrorCode.WINDOW_LIMIT,
                        {"limit": max_count},
                    )
                return
            lo, hi = ranges[position]
            for exponent in range(lo, hi + 1):
                exponents[position] = exponent
                descend(
                    position + 1,
                    [
                        partial[index] + constraint.coefficients[position] * exponent
                        for index, constraint in enumerate(constraints)
                    ],
                )
            exponents[position] = 0

        descend(0, [0] * len(constraints))
        found.sort(key=self.sort_key)
        logger.debug("enumerated %d monomials of %s in degrees %s", len(found), self.names, degree)
        return found
