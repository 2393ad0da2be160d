"""Tests for text, SVG and table renderings."""

import json
from pathlib import Path

import pytest

from syntomic_bpn.chart import (
    ChartSpec,
    parse_json,
    render_json,
    render_svg,
    render_table,
    render_text,
    stack_offsets,
)
from syntomic_bpn.config import Window
from syntomic_bpn.exceptions import ErrorCode, SyntomicError
from syntomic_bpn.models import BasisClass, BigradedBasis, DimensionTable


GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def fp_basis():
    """Syntomic cohomology of F_2: the unit and ∂."""
    classes = (BasisClass("∂", -1, 1, piece="∂"), BasisClass("1", 0, 0, piece="A00"))
    return BigradedBasis(2, -1, Window((-1, 0)), classes)


@pytest.fixture(scope="module")
def bpn2_basis(calculator):
    """Syntomic cohomology of BP⟨2⟩ at p = 2 over its full degree range."""
    return calculator.syntomic.syntomic(2, 2, Window((-2, 26)))


class TestText:
    """Tests for the fixed-width chart."""

    def test_fp_chart(self, fp_basis):
        expected = "\n".join(
            [
                "p=2 n=-1 degree -2..1 weight -1..2",
                "   2 ....",
                "   1 .o..",
                "   0 ..o.",
                "  -1 ....",
                "     ----",
                "       0",
                "(0,0) 1",
                "(-1,1) ∂",
            ]
        ) + "\n"

        assert render_text(fp_basis, ChartSpec.for_basis(fp_basis)) == expected

    def test_stacked_cell_mark(self):
        classes = tuple(BasisClass(f"x{i}", 0, 0) for i in range(3))
        basis = BigradedBasis(3, 0, Window((0, 0)), classes)

        text = render_text(basis, ChartSpec((0, 0), (0, 0), labels=False))

        assert text.splitlines()[1] == "   0 3"

    def test_bpn2_chart_matches_golden(self, bpn2_basis):
        expected = (GOLDEN / "syntomic_p2_n2.txt").read_text(encoding="utf-8")

        assert render_text(bpn2_basis, ChartSpec.for_basis(bpn2_basis)) == expected

    def test_empty_range_rejected(self):
        with pytest.raises(SyntomicError) as excinfo:
            ChartSpec((3, 1), (0, 0))

        assert excinfo.value.code is ErrorCode.RANGE_EMPTY


class TestSvg:
    """Tests for the SVG chart."""

    def test_deterministic(self, fp_basis):
        spec = ChartSpec.for_basis(fp_basis)

        first = render_svg(fp_basis, spec)
        second = render_svg(fp_basis, spec)

        assert first == second
        assert first.startswith("<?xml")
        assert first.count("<circle") == 2
        assert "<title>∂</title>" in first

    def test_stack_offsets(self):
        assert stack_offsets(1, 5) == [0]
        assert stack_offsets(3, 5) == [-5, 5, -10]

    def test_bpn2_classes_match_golden(self, bpn2_basis):
        svg = render_svg(bpn2_basis, ChartSpec.for_basis(bpn2_basis))
        start = svg.index('<g id="classes"')
        expected = (GOLDEN / "syntomic_p2_n2_classes.svg").read_text(encoding="utf-8")

        assert 'width="1240" height="360"' in svg
        assert svg[start:] == expected + "</svg>\n"

    def test_stacked_cell_offsets(self, bpn2_basis):
        """λ1 and Ξ(2,1) share (3,1): the first sits above the grid point, the second below."""
        svg = render_svg(bpn2_basis, ChartSpec.for_basis(bpn2_basis))

        assert '<circle cx="240" cy="170" r="4" fill="#000000"><title>Ξ(2,1)</title></circle>' in svg
        assert '<circle cx="240" cy="190" r="4" fill="#000000"><title>λ1</title></circle>' in svg
        assert svg.count("<circle") == 28


class TestTablesAndJson:
    """Tests for dimension tables and JSON dumps."""

    def test_table_columns(self):
        window = Window((-1, 1))
        tc = DimensionTable(5, 2, window, {-1: 1, 0: 1, 1: 0}, module="TC")
        k = DimensionTable(5, 2, window, {-1: 0, 0: 1, 1: 0}, module="K")

        lines = render_table(tc, k).splitlines()

        assert lines[0].split() == ["degree", "TC", "K"]
        assert lines[1].split() == ["-1", "1", "0"]
        assert len(lines) == 4

    def test_json_keeps_unicode(self, fp_basis):
        text = render_json(fp_basis)

        assert "∂" in text
        assert json.loads(text)["classes"][0]["label"] == "∂"

    def test_dump_parse_dump_is_stable(self, bpn2_basis):
        text = render_json(bpn2_basis)

        parsed = parse_json(text)

        assert len(json.loads(text)["classes"]) == 28
        assert parsed == bpn2_basis
        assert render_json(parsed) == text

    @pytest.mark.parametrize("text", ["{", '{"p": 2, "classes": []}', "[1, 2]"])
    def test_parse_rejects_non_basis(self, text):
        with pytest.raises(SyntomicError) as excinfo:
            parse_json(text)

        assert excinfo.value.code is ErrorCode.PARSE_ERROR
