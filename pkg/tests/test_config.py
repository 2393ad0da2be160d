"""Tests for windows, run configuration and engine settings."""

import pytest

from syntomic_bpn.calculator import SyntomicCalculator
from syntomic_bpn.config import EngineSettings, MAX_WINDOW_ENV, OutputFormat, RunConfig, Window
from syntomic_bpn.controllers.prismatic import t_bockstein_sequence
from syntomic_bpn.exceptions import ErrorCode, SyntomicError


class TestWindow:
    """Tests for Window parsing and geometry."""

    def test_parse(self):
        assert Window.parse("-4..12") == Window((-4, 12))

    @pytest.mark.parametrize("text", ["4", "a..b", "5..1"])
    def test_parse_rejects(self, text):
        with pytest.raises(SyntomicError) as excinfo:
            Window.parse(text)

        assert excinfo.value.code is ErrorCode.CONFIG

    def test_expand_and_covers(self):
        window = Window((0, 10), filtration=(0, 4))

        grown = window.expand(2, 1, 3)

        assert grown == Window((-2, 12), None, (-3, 7))
        assert grown.covers(window)
        assert not window.covers(grown)

    def test_contains_skips_unbounded_axes(self):
        window = Window((0, 10))

        assert window.contains(5, 100, -100)
        assert not window.contains(11)


class TestRunConfig:
    """Tests for command-line configuration validation."""

    def test_format_from_string(self):
        config = RunConfig("syntomic", output_format="json", output_path="out.json")

        assert config.output_format is OutputFormat.JSON
        assert config.output_path.name == "out.json"

    def test_unknown_format(self):
        with pytest.raises(SyntomicError) as excinfo:
            RunConfig("syntomic", output_format="png")

        assert excinfo.value.code is ErrorCode.CONFIG

    def test_height_below_minus_one(self):
        with pytest.raises(SyntomicError):
            RunConfig("syntomic", n=-2)


class TestEngineSettings:
    """Tests for the environment-driven enumeration cap."""

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv(MAX_WINDOW_ENV, "5000")

        assert EngineSettings.from_env().max_monomials == 5000

    def test_unset(self, monkeypatch):
        monkeypatch.delenv(MAX_WINDOW_ENV, raising=False)

        assert EngineSettings.from_env().max_monomials is None

    def test_not_an_integer(self, monkeypatch):
        monkeypatch.setenv(MAX_WINDOW_ENV, "lots")

        with pytest.raises(SyntomicError) as excinfo:
            EngineSettings.from_env()

        assert excinfo.value.code is ErrorCode.CONFIG


class TestCalculator:
    """Tests for the run cache."""

    def test_runs_are_cached(self):
        calculator = SyntomicCalculator(EngineSettings())
        sequence = t_bockstein_sequence(2, 0, periodic=False)
        window = Window((-4, 4), filtration=(0, 4))

        first = calculator.run(sequence, window)

        assert calculator.run(sequence, window) is first
        calculator.clear_cache()
        assert calculator.run(sequence, window) is not first
