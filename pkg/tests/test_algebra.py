"""Tests for bigraded monomial algebras and maps between them."""

import pytest

from syntomic_bpn.algebra.bigraded import AlgebraPresentation, Element, GeneratorKind, GeneratorSpec
from syntomic_bpn.algebra.maps import MonomialMap
from syntomic_bpn.controllers.generators import (
    epsilon_generator,
    lambda_generator,
    mu_generator,
    product_label,
    partial_label,
    xi_bidegree,
)
from syntomic_bpn.controllers.prismatic import t_bockstein_sequence
from syntomic_bpn.controllers.thh import hochschild_may_sequence, thh_algebra
from syntomic_bpn.engine.properties import koszul_violations
from syntomic_bpn.exceptions import ErrorCode, SyntomicError


class TestPresentation:
    """Tests for monomials, gradings and validation."""

    def test_thh_window_counts(self):
        """Λ(λ1, λ2, λ3) ⊗ F_2[μ^8] has 6 monomials in [0,16] and 14 in [0,32]."""
        algebra = thh_algebra(2, 2)

        assert len(algebra.basis_in_window((0, 16))) == 6
        assert len(algebra.basis_in_window((0, 32))) == 14

    def test_bidegrees(self):
        """λ_j sits in (2p^j - 1, 1) and μ^{p^{n+1}} in (2p^{n+1}, 0)."""
        algebra = thh_algebra(3, 1)

        assert algebra.monomial_bidegree(algebra.monomial(λ1=1)) == (5, 1)
        assert algebra.monomial_bidegree(algebra.monomial(λ2=1)) == (17, 1)
        assert algebra.monomial_bidegree(algebra.monomial(μ=1)) == (18, 0)

    def test_labels_merge_powers_of_mu(self):
        """A generator standing for μ^8 prints its square as μ^16."""
        algebra = thh_algebra(2, 2)

        assert algebra.label(algebra.monomial(λ1=1, μ=2)) == "λ1μ^16"
        assert algebra.label(algebra.unit()) == "1"

    def test_exterior_square_rejected(self):
        """Exterior exponents above 1 are not monomials."""
        algebra = thh_algebra(3, 0)

        with pytest.raises(SyntomicError) as excinfo:
            algebra.monomial(λ1=2)

        assert excinfo.value.code is ErrorCode.PRECONDITION

    def test_truncated_power_rejected(self):
        """μ_0 is truncated at p in the Hochschild-May algebra."""
        algebra = hochschild_may_sequence(2, 1).algebra

        assert algebra.is_valid(algebra.monomial({"μ_0": 1}))
        with pytest.raises(SyntomicError):
            algebra.monomial({"μ_0": 2})

    def test_parity_checked_at_odd_primes(self):
        """Exterior generators need odd degree when p is odd."""
        spec = GeneratorSpec("x", GeneratorKind.EXTERIOR, 4, 1)

        with pytest.raises(SyntomicError) as excinfo:
            AlgebraPresentation(3, (spec,))

        assert excinfo.value.code is ErrorCode.PRECONDITION


class TestMultiplication:
    """Tests for Koszul-signed products."""

    def test_odd_generators_anticommute(self):
        """λ2 λ1 = -λ1 λ2 over F_3."""
        algebra = thh_algebra(3, 1)
        l1 = algebra.monomial(λ1=1)
        l2 = algebra.monomial(λ2=1)

        forward = algebra.multiply(l1, l2)
        backward = algebra.multiply(l2, l1)

        assert forward == backward.scale(-1)
        assert algebra.multiply(l1, l1).is_zero()

    def test_sampled_koszul_rule(self, rng):
        """Sampled products of basis monomials satisfy graded commutativity."""
        algebra = thh_algebra(3, 1, epsilon=True)
        monomials = algebra.basis_in_window((0, 60))

        assert koszul_violations(algebra, monomials, rng, 300) == []

    def test_element_arithmetic(self):
        """Coefficients are reduced mod p and zero terms vanish."""
        algebra = thh_algebra(3, 0)
        mu = algebra.monomial(μ=1)

        total = Element.single(3, mu, 2) + Element.single(3, mu, 1)

        assert total.is_zero()


class TestWindows:
    """Tests for windowed enumeration."""

    def test_unbounded_laurent_window(self):
        """Opposite-degree Laurent generators need a filtration bound."""
        algebra = t_bockstein_sequence(2, 0, periodic=True).algebra

        with pytest.raises(SyntomicError) as excinfo:
            algebra.basis_in_window((-4, 4))

        assert excinfo.value.code is ErrorCode.INFINITE_WINDOW

    def test_filtration_bound_makes_window_finite(self):
        """Bounding the t-exponent leaves finitely many monomials."""
        algebra = t_bockstein_sequence(2, 0, periodic=True).algebra

        monomials = algebra.basis_in_window((-4, 4), filtration=(-2, 2))

        assert monomials
        assert all(-4 <= algebra.monomial_bidegree(m)[0] <= 4 for m in monomials)

    def test_window_limit(self):
        """Enumeration stops once the monomial limit is exceeded."""
        algebra = thh_algebra(2, 2)

        with pytest.raises(SyntomicError) as excinfo:
            algebra.basis_in_window((0, 32), max_count=5)

        assert excinfo.value.code is ErrorCode.WINDOW_LIMIT


class TestLabels:
    """Tests for closed-form label helpers."""

    def test_product_label_places_xi_in_lambda_slot(self):
        assert product_label([1, 3], (2, 1)) == "λ1Ξ(2,1)λ3"
        assert product_label([]) == "1"

    def test_partial_label(self):
        assert partial_label("1") == "∂"
        assert partial_label("λ1") == "∂λ1"

    def test_xi_bidegree(self):
        """Ξ_{j,d} sits in (2p^j - 1 - 2dp^{j-1}, 1)."""
        assert xi_bidegree(2, 3, 1) == (7, 1)
        assert xi_bidegree(3, 1, 2) == (1, 1)


class TestMonomialMap:
    """Tests for multiplicative maps."""

    def test_quotient_map(self):
        """Sending λ to zero kills every monomial containing λ."""
        source = AlgebraPresentation(2, (lambda_generator(2, 1), mu_generator(2)))
        target = AlgebraPresentation(2, (mu_generator(1), epsilon_generator(2, 1)))
        mapping = MonomialMap("q", source, target, {"μ": {"μ": 2}})

        image = mapping.apply(source.monomial(μ=3))

        assert target.label(image.monomials()[0]) == "μ^6"
        assert mapping.apply(source.monomial(λ1=1, μ=1)).is_zero()

    def test_bidegree_mismatch(self):
        """A generator cannot map to a monomial of another bidegree."""
        source = AlgebraPresentation(2, (mu_generator(2),))
        target = AlgebraPresentation(2, (mu_generator(1),))

        with pytest.raises(SyntomicError) as excinfo:
            MonomialMap("bad", source, target, {"μ": {"μ": 1}})

        assert excinfo.value.code is ErrorCode.BIDEGREE_MISMATCH
