"""Tests for THH pages, the Hochschild-May spectral sequence and the Hodge-Tate square."""

import pytest

from syntomic_bpn.controllers.thh import hochschild_may_sequence
from syntomic_bpn.exceptions import ErrorCode, SyntomicError


class TestTHHPage:
    """Tests for the closed-form THH page."""

    def test_window_counts(self, calculator):
        assert len(calculator.thh.thh_bpn_page(2, 2, (0, 16))) == 6
        assert len(calculator.thh.thh_bpn_page(2, 2, (0, 32))) == 14

    def test_non_prime_rejected(self, calculator):
        with pytest.raises(SyntomicError) as excinfo:
            calculator.thh.thh_bpn_page(6, 0, (0, 8))

        assert excinfo.value.code is ErrorCode.PRECONDITION


class TestHochschildMay:
    """Tests for the Hochschild-May spectral sequence."""

    @pytest.mark.parametrize("p, n", [(2, 0), (2, 1), (3, 1)])
    def test_e_infinity_is_thh(self, calculator, p, n):
        window = (0, 2 * p ** (n + 1) + sum(2 * p**j - 1 for j in range(1, n + 2)))

        result = calculator.thh.hochschild_may(p, n, window)

        assert result.basis.signature() == calculator.thh.thh_bpn_page(p, n, window).signature()

    def test_lambda_detected_by_sigma_v_mu(self, calculator):
        result = calculator.thh.hochschild_may(3, 0, (0, 12))

        assert result.basis.get("λ1").detected_by == "σv0μ^2"

    def test_differentials_on_pages_2p_i(self, calculator):
        result = calculator.thh.hochschild_may(2, 1, (0, 20))

        assert {entry.page for entry in result.run.trusted_log()} == {2, 4}

    def test_rule_pages_are_twice_p_to_the_i(self):
        assert [rule.page for rule in hochschild_may_sequence(3, 1).rules] == [2, 6]


class TestHodgeTate:
    """Tests for the Hodge-Tate square and the comparison with THH(F_p)."""

    def test_square_commutes(self, calculator):
        square = calculator.thh.hodge_tate_square(2, 0, (0, 8))

        assert "μ^2" in square.image("left")
        assert square.maps["left"]["λ1"] is None

    def test_fp_comparison(self, calculator):
        result = calculator.thh.fp_comparison_check(2, 0, (0, 6))

        assert result.passed, result.witnesses
        assert result.detail == "image mod λ: 1, ε1, μ^2"

    def test_fp_comparison_at_height_one(self, calculator):
        result = calculator.thh.fp_comparison_check(3, 1, (0, 40))

        assert result.passed, result.witnesses
        assert result.detail == "image mod λ: 1, ε2, μ^9, μ^9ε2, μ^18"

    def test_square_at_height_one(self, calculator):
        """At p = 3, n = 1 the maps keep ε2 and, away from λ, hit the powers of μ^9."""
        square = calculator.thh.hodge_tate_square(3, 1, (-40, 40))

        for edge in ("top", "left", "right"):
            for source, image in square.maps[edge].items():
                if "ε2" in source and image is not None:
                    assert "ε2" in image
        lambda_free = [label for label in square.maps["top"] if "λ" not in label]
        assert sorted(square.maps["top"][label] for label in lambda_free) == sorted(
            ["1", "ε2", "μ^9", "μ^9ε2", "μ^18"]
        )
        assert square.maps["left"]["λ1"] is None
        assert square.maps["left"]["μ^9ε2"] == "μ^9ε2"
        assert square.maps["right"]["μ^-9"] == "μ^-9"

    def test_hodge_tate_sequence_collapses_to_zero_line(self, calculator):
        run = calculator.thh.hodge_tate_sequence(2, 0, (-4, 8))

        assert run.classes()
        assert all(c.filtration == 0 for c in run.classes())
