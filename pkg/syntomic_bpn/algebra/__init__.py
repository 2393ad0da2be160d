"""Exact F_p linear algebra and bigraded monomial algebras."""

from .bigraded import AlgebraPresentation, Element, GeneratorKind, GeneratorSpec, Monomial
from .maps import MonomialMap
from .linalg_fp import (
    FpMatrix,
    cokernel_basis,
    homology_basis,
    is_prime,
    kernel_basis,
    rank,
    rref,
    solve_columns,
)

__all__ = [
    "AlgebraPresentation",
    "Element",
    "GeneratorKind",
    "GeneratorSpec",
    "Monomial",
    "MonomialMap",
    "FpMatrix",
    "cokernel_basis",
    "homology_basis",
    "is_prime",
    "kernel_basis",
    "rank",
    "rref",
    "solve_columns",
]
