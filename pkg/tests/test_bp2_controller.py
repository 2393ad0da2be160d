"""Tests for TC and K of BP⟨2⟩."""

import pytest

from syntomic_bpn.controllers.bp2 import k_theory_corrections
from syntomic_bpn.exceptions import ErrorCode, SyntomicError


class TestBP2:
    """Tests for the height-2 tables."""

    def test_corrections(self):
        assert k_theory_corrections(5) == [7, 47, 56]
        assert k_theory_corrections(7) == [11, 95, 108]

    @pytest.mark.parametrize("p", [5, 7])
    def test_motivic_no_room(self, calculator, p):
        result = calculator.bp2.motivic_no_room(p)

        assert result.passed, result.witnesses
        assert result.detail.endswith("0 candidate differentials of length 3")

    def test_small_prime_rejected(self, calculator):
        with pytest.raises(SyntomicError) as excinfo:
            calculator.bp2.tc_bp2(3)

        assert excinfo.value.code is ErrorCode.PRECONDITION

    def test_tc_table(self, calculator):
        table = calculator.bp2.tc_bp2(5)

        assert table.module == "TC(BP<2>)/(p,v1,v2)"
        assert table.dimension(-1) == 1
        assert table.dimension(0) == 1
        # ∂λ3 and Ξ(3,1)λ2 plus v3 itself
        assert table.dimension(248) == 3

    def test_k_table(self, calculator):
        tables = calculator.bp2.k_bp2(5)

        assert tables.k.dimension(-1) == 0
        assert tables.k.dimension(7) == tables.tc.dimension(7) + 1
        assert tables.k.dimension(8) == tables.tc.dimension(8)
        assert tables.v_inverted.dimension(-1) == 1
