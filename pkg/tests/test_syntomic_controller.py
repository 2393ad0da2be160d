"""Tests for syntomic cohomology and the v_{n+1}-periodic tables."""

import pytest

from syntomic_bpn.config import Window
from syntomic_bpn.controllers.syntomic import SyntomicController, v_label
from syntomic_bpn.exceptions import ErrorCode, SyntomicError


class TestClosedForm:
    """Tests for the closed-form dimension and generators."""

    @pytest.mark.parametrize(
        "p, n, expected",
        [(2, -1, 2), (3, -1, 2), (2, 0, 5), (3, 0, 6), (2, 1, 12), (2, 2, 28), (5, 2, 64)],
    )
    def test_dimension(self, p, n, expected):
        assert SyntomicController.syntomic_dimension(p, n) == expected

    def test_degree_range(self):
        assert SyntomicController.degree_range(2, 2) == (-1, 25)
        assert SyntomicController.degree_range(3, -1) == (-1, 0)

    def test_generators_match_dimension(self, calculator):
        generators = calculator.syntomic.syntomic_generators(3, 1)

        assert len(generators) == SyntomicController.syntomic_dimension(3, 1)

    def test_v_label(self):
        assert v_label(1, 0, "λ1") == "λ1"
        assert v_label(1, 1, "1") == "v2"
        assert v_label(2, 2, "λ1") == "v3^2λ1"


class TestSyntomic:
    """Tests for syntomic cohomology computed through can - φ."""

    def test_height_minus_one(self, calculator):
        """BP⟨-1⟩ = F_p has classes 1 and ∂."""
        basis = calculator.syntomic.syntomic(2, -1)

        assert basis.bidegrees() == {"∂": (-1, 1), "1": (0, 0)}

    def test_p2_n0(self, calculator):
        basis = calculator.syntomic.syntomic(2, 0)

        assert basis.bidegrees() == {
            "∂": (-1, 1),
            "1": (0, 0),
            "Ξ(1,1)": (1, 1),
            "∂λ1": (2, 2),
            "λ1": (3, 1),
        }

    def test_p3_n0(self, calculator):
        basis = calculator.syntomic.syntomic(3, 0)

        assert len(basis) == 6
        assert basis.get("Ξ(1,1)").bidegree == (3, 1)
        assert basis.get("Ξ(1,2)").bidegree == (1, 1)

    def test_p2_n2_chart(self, calculator):
        """28 classes in five rows with the corner classes where they belong."""
        basis = calculator.syntomic.syntomic(2, 2, Window((-2, 26)))

        assert len(basis) == 28
        assert basis.row_counts() == {0: 1, 1: 7, 2: 12, 3: 7, 4: 1}
        assert basis.get("λ1λ2λ3").bidegree == (25, 3)
        assert basis.get("∂").bidegree == (-1, 1)
        assert basis.get("Ξ(3,1)").bidegree == (7, 1)
        assert basis.get("∂λ1λ2λ3").bidegree == (24, 4)

    def test_ledger_pieces(self, calculator):
        """The kernel is A00 plus the Ξ-piece; the cokernel is A00."""
        ledger = calculator.syntomic.syntomic_ledger(2, 1)
        report = ledger.kernel.window

        a00 = {c.label for c in ledger.decomposition.a00 if report.contains(c.degree)}
        xi = {c.label for c in ledger.decomposition.xi_piece if report.contains(c.degree)}
        cokernel = {c.label for c in ledger.cokernel if report.contains(c.degree - 1)}

        assert set(ledger.kernel.labels) == a00 | xi
        assert cokernel == a00
        assert set(ledger.kernel_pieces()) <= {"A00", "Ξ"}


class TestPeriodicity:
    """Tests for the v_{n+1}-Bockstein gap check and the free module table."""

    @pytest.mark.parametrize("p, n", [(2, 0), (2, 1), (2, 2), (3, 1), (5, 2)])
    def test_gap_check_passes(self, calculator, p, n):
        result = calculator.syntomic.vn1_bockstein_gap_check(p, n)

        assert result.passed, result.witnesses

    def test_gap_check_needs_positive_v_degree(self, calculator):
        with pytest.raises(SyntomicError) as excinfo:
            calculator.syntomic.vn1_bockstein_gap_check(2, -1)

        assert excinfo.value.code is ErrorCode.PRECONDITION

    def test_mod_vn_table(self, calculator):
        """Every generator repeats one |v2| = 6 higher."""
        table = calculator.syntomic.mod_vn_table(2, 1)

        assert table.window.degree == (-1, 16)
        assert table.basis.get("v2").bidegree == (6, 0)
        assert table.basis.get("v2λ1").bidegree == (9, 1)
        assert sum(table.dimensions.values()) == len(table.basis)
