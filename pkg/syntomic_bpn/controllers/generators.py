"""Named generators and closed-form bidegrees of the height-n computations."""

from __future__ import annotations

from typing import Iterable, List, Optional, Tuple

from ..algebra.bigraded import GeneratorKind, GeneratorSpec

__all__ = [
    "PARTIAL_BIDEGREE",
    "lambda_generator",
    "mu_generator",
    "epsilon_generator",
    "t_generator",
    "sigma_v_generator",
    "lambda_degree",
    "xi_bidegree",
    "v_degree",
    "top_degree",
    "xi_label",
    "product_label",
    "partial_label",
]

PARTIAL_BIDEGREE = (-1, 1)


def lambda_degree(p: int, j: int) -> int:
    return 2 * p**j - 1


def lambda_generator(p: int, j: int) -> GeneratorSpec:
    """``λ_j`` in bidegree ``(2p^j - 1, 1)``."""
    return GeneratorSpec(f"λ{j}", GeneratorKind.EXTERIOR, lambda_degree(p, j), 1)


def mu_generator(power: int, laurent: bool = False, name: str = "μ") -> GeneratorSpec:
    """``μ^power`` in bidegree ``(2 power, 0)``, printed as a power of ``μ``."""
    kind = GeneratorKind.LAURENT if laurent else GeneratorKind.POLYNOMIAL
    return GeneratorSpec(name, kind, 2 * power, 0, symbol="μ", label_scale=power)


def epsilon_generator(p: int, i: int) -> GeneratorSpec:
    """``ε_i`` in bidegree ``(2p^i - 1, -1)``."""
    return GeneratorSpec(f"ε{i}", GeneratorKind.EXTERIOR, 2 * p**i - 1, -1)


def t_generator(laurent: bool) -> GeneratorSpec:
    """``t`` in bidegree ``(-2, 0)``; its exponent is the t-adic filtration."""
    kind = GeneratorKind.LAURENT if laurent else GeneratorKind.POLYNOMIAL
    return GeneratorSpec("t", kind, -2, 0, filtration=1)


def sigma_v_generator(p: int, i: int) -> GeneratorSpec:
    """``σv_i`` in bidegree ``(2p^i - 1, 1)``, in May filtration ``2p^i``."""
    return GeneratorSpec(f"σv{i}", GeneratorKind.EXTERIOR, 2 * p**i - 1, 1, filtration=2 * p**i)


def xi_bidegree(p: int, j: int, d: int) -> Tuple[int, int]:
    return 2 * p**j - 1 - 2 * d * p ** (j - 1), 1


def v_degree(p: int, n: int) -> int:
    """Degree of ``v_{n+1}``."""
    return 2 * p ** (n + 1) - 2


def top_degree(p: int, n: int) -> int:
    """Total degree of ``λ_1 ... λ_{n+1}``."""
    return sum(lambda_degree(p, j) for j in range(1, n + 2))


def xi_label(j: int, d: int) -> str:
    return f"Ξ({j},{d})"


def product_label(lambdas: Iterable[int], xi: Optional[Tuple[int, int]] = None) -> str:
    """Label of ``λ_S`` with ``Ξ_{j,d}`` written in the slot of ``λ_j``."""
    slots: List[Tuple[int, str]] = [(j, f"λ{j}") for j in lambdas]
    if xi is not None:
        slots.append((xi[0], xi_label(*xi)))
    slots.sort()
    return "".join(text for _, text in slots) or "1"


def partial_label(label: str) -> str:
    return "∂" if label == "1" else f"∂{label}"
