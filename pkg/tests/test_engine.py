"""Tests for the generic spectral sequence engine."""

import json

import pytest

from syntomic_bpn.config import Window
from syntomic_bpn.controllers.prismatic import t_bockstein_sequence
from syntomic_bpn.engine.definitions import load_definition, parse_definition
from syntomic_bpn.engine.models import CellCounts, DifferentialShift
from syntomic_bpn.engine.properties import leibniz_violations
from syntomic_bpn.engine.runner import initial_page, no_room_report, run
from syntomic_bpn.exceptions import ErrorCode, SyntomicError


def _toy_definition(**overrides):
    """F_3[t] ⊗ Λ(e) with d_1(e) = t."""
    data = {
        "name": "toy",
        "p": 3,
        "generators": [
            {"name": "t", "kind": "polynomial", "degree": -2, "adams_weight": 0, "filtration": 1},
            {"name": "e", "kind": "exterior", "degree": -1, "adams_weight": -1},
        ],
        "shift": "bockstein",
        "rules": [{"page": 1, "matcher": {"generator": "e"}, "image": [{"exponents": {"t": 1}}]}],
        "window": {"degree": [-10, 2], "filtration": [0, 5]},
    }
    data.update(overrides)
    return data


class TestRun:
    """Tests for page turning and the differential log."""

    def test_toy_sequence_leaves_unit(self):
        """d_1(e t^k) = t^{k+1} kills everything but 1."""
        definition = parse_definition(_toy_definition())

        result = run(definition.sequence, definition.window)

        assert [c.label for c in result.classes()] == ["1"]
        assert result.collapse_page == 2

    def test_log_records_leading_hits(self):
        """Each trusted differential logs rank 1 and the monomial it hits."""
        definition = parse_definition(_toy_definition())

        result = run(definition.sequence, definition.window)
        entries = {entry.source: entry for entry in result.trusted_log()}

        entry = entries[(-1, -1, 0)]
        assert entry.page == 1
        assert entry.target == (-2, 0, 1)
        assert entry.rank == 1
        assert entry.hits == ("t",)

    def test_compute_window_must_cover_margins(self):
        """A computation window equal to the report window is too small."""
        definition = parse_definition(_toy_definition())

        with pytest.raises(SyntomicError) as excinfo:
            initial_page(definition.sequence, definition.window, compute=definition.window)

        assert excinfo.value.code is ErrorCode.WINDOW_TOO_SMALL

    def test_monomial_limit(self):
        """The enumeration cap surfaces as WINDOW_LIMIT."""
        definition = parse_definition(_toy_definition())

        with pytest.raises(SyntomicError) as excinfo:
            run(definition.sequence, definition.window, max_monomials=3)

        assert excinfo.value.code is ErrorCode.WINDOW_LIMIT

    def test_window_growth_is_stable(self):
        """Enlarging the window does not change E∞ inside the original one."""
        sequence = t_bockstein_sequence(2, 0, periodic=True)
        window = Window((-8, 8), filtration=(-4, 4))

        inner = {c.label for c in run(sequence, window).classes()}
        outer = {
            c.label
            for c in run(sequence, window.expand(8, 0, 8)).classes()
            if window.contains(*c.cell)
        }

        assert inner == outer

    def test_periodic_t_bockstein_at_p2_n0(self):
        """TP of BP⟨0⟩ at p = 2 keeps t^{2k} and t^{2k}λ1 only."""
        sequence = t_bockstein_sequence(2, 0, periodic=True)

        result = run(sequence, Window((-8, 8), filtration=(-4, 4)))
        labels = {c.label for c in result.classes()}

        assert {"1", "λ1", "t^2", "t^2λ1", "t^-2", "t^-2λ1"} <= labels
        assert all("ε" not in label and "μ" not in label for label in labels)


class TestLeibniz:
    """Tests for Leibniz extension of rules."""

    def test_sampled_leibniz_rule(self, rng):
        """Sampled products satisfy d(xy) = d(x)y ± x d(y) for every rule."""
        sequence = t_bockstein_sequence(3, 1, periodic=False)
        algebra = sequence.algebra
        monomials = algebra.basis_in_window((-18, 18), filtration=(0, 12))

        for rule in sequence.rules:
            assert leibniz_violations(algebra, rule, monomials, rng, 200) == []


class TestNoRoom:
    """Tests for the no-room scan."""

    def test_bockstein_candidate(self):
        counts = CellCounts({(0, 0, 0): 1, (-1, 1, 2): 1})

        candidates = no_room_report(counts, DifferentialShift.bockstein(), range(1, 4))

        assert [(c.r, c.source, c.target) for c in candidates] == [(2, (0, 0, 0), (-1, 1, 2))]

    def test_motivic_candidate(self):
        counts = CellCounts({(5, 0, 0): 1, (4, 3, 0): 2})

        candidates = no_room_report(counts, DifferentialShift.motivic(), range(2, 5))

        assert [(c.r, c.source, c.target) for c in candidates] == [(3, (5, 0, 0), (4, 3, 0))]

    def test_empty_range(self):
        counts = CellCounts({(0, 0, 0): 1, (-1, 1, 2): 1})

        assert no_room_report(counts, DifferentialShift.bockstein(), range(3, 3)) == []


class TestDefinitions:
    """Tests for definition file parsing."""

    def test_missing_generators(self):
        data = _toy_definition()
        del data["generators"]

        with pytest.raises(SyntomicError) as excinfo:
            parse_definition(data)

        assert excinfo.value.code is ErrorCode.PARSE_ERROR
        assert "generators" in excinfo.value.message

    def test_unknown_kind_names_field(self):
        data = _toy_definition()
        data["generators"][1]["kind"] = "divided"

        with pytest.raises(SyntomicError) as excinfo:
            parse_definition(data)

        assert "generators[1].kind" in excinfo.value.message

    def test_rule_off_the_shift(self):
        """An image two t-steps away does not fit d_1."""
        rules = [{"page": 1, "matcher": {"generator": "e"}, "image": [{"exponents": {"t": 2}}]}]

        with pytest.raises(SyntomicError) as excinfo:
            parse_definition(_toy_definition(rules=rules))

        assert excinfo.value.code is ErrorCode.BIDEGREE_MISMATCH

    def test_load_reports_json_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"p": 3,\n  "generators": [}', encoding="utf-8")

        with pytest.raises(SyntomicError) as excinfo:
            load_definition(path)

        assert excinfo.value.code is ErrorCode.PARSE_ERROR
        assert excinfo.value.details["line"] == 2

    def test_load_uses_file_stem_as_default_name(self, tmp_path):
        data = _toy_definition()
        del data["name"]
        path = tmp_path / "mine.json"
        path.write_text(json.dumps(data), encoding="utf-8")

        definition = load_definition(path)

        assert definition.sequence.name == "mine"
        assert definition.window == Window((-10, 2), filtration=(0, 5))
