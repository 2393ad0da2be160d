"""Tests for the syntomic-bpn command line."""

import json
from pathlib import Path

from click.testing import CliRunner

from syntomic_bpn.cli import cli
from syntomic_bpn.config import Window
from syntomic_bpn.verification import expected_tp_labels


GOLDEN = Path(__file__).parent / "golden"


def _invoke(*args):
    return CliRunner().invoke(cli, list(args))


class TestCommands:
    """Tests for successful invocations."""

    def test_syntomic_text(self):
        result = _invoke("syntomic", "-p", "2", "-n", "-1")

        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "p=2 n=-1 degree -2..1 weight -1..2"
        assert "(-1,1) ∂" in result.output

    def test_syntomic_json(self):
        result = _invoke("syntomic", "-p", "2", "-n", "0", "--format", "json")

        assert result.exit_code == 0
        labels = {c["label"] for c in json.loads(result.output)["classes"]}
        assert labels == {"∂", "1", "Ξ(1,1)", "∂λ1", "λ1"}

    def test_thh_svg_to_file(self, tmp_path):
        out = tmp_path / "thh.svg"

        result = _invoke("thh", "-p", "2", "-n", "1", "--format", "svg", "--out", str(out))

        assert result.exit_code == 0
        assert out.read_text(encoding="utf-8").startswith("<?xml")

    def test_tc_bp2_json(self):
        result = _invoke("tc-bp2", "-p", "5", "--format", "json")

        assert result.exit_code == 0
        assert json.loads(result.output)["module"] == "TC(BP<2>)/(p,v1,v2)"

    def test_k_bp2_table(self):
        result = _invoke("k-bp2", "-p", "5", "--window", "-1..10")

        assert result.exit_code == 0
        assert result.output.splitlines()[0].split()[0] == "degree"

    def test_run_custom(self, tmp_path):
        definition = {
            "p": 3,
            "generators": [
                {"name": "t", "kind": "polynomial", "degree": -2, "adams_weight": 0, "filtration": 1},
                {"name": "e", "kind": "exterior", "degree": -1, "adams_weight": -1},
            ],
            "rules": [{"page": 1, "matcher": {"generator": "e"}, "image": [{"exponents": {"t": 1}}]}],
            "window": {"degree": [-10, 2], "filtration": [0, 5]},
        }
        path = tmp_path / "toy.json"
        path.write_text(json.dumps(definition), encoding="utf-8")

        result = _invoke("run-custom", "--defs", str(path), "--format", "json")

        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert [c["label"] for c in payload["classes"]] == ["1"]
        assert payload["metadata"]["sequence"] == "toy"

    def test_run_custom_reproduces_tp(self, tmp_path, calculator):
        """A hand-written periodic t-Bockstein at p = 2, n = 0 gives the same E∞ as the tp builder."""
        definition = {
            "name": "tp-by-hand",
            "p": 2,
            "generators": [
                {"name": "t", "kind": "laurent", "degree": -2, "adams_weight": 0, "filtration": 1},
                {"name": "λ1", "kind": "exterior", "degree": 3, "adams_weight": 1},
                {"name": "μ", "kind": "polynomial", "degree": 4, "adams_weight": 0, "symbol": "μ", "label_scale": 2},
                {"name": "ε1", "kind": "exterior", "degree": 3, "adams_weight": -1},
            ],
            "shift": "bockstein",
            "rules": [
                {"page": 1, "matcher": {"generator": "ε1"}, "image": [{"exponents": {"t": 1, "μ": 1}}]},
                {"page": 2, "matcher": {"generator": "t", "power": 1}, "image": [{"exponents": {"t": 3, "λ1": 1}}]},
            ],
            "window": {"degree": [-8, 8], "filtration": [-4, 6]},
        }
        path = tmp_path / "tp.json"
        path.write_text(json.dumps(definition, ensure_ascii=False), encoding="utf-8")

        result = _invoke("run-custom", "--defs", str(path), "--format", "json")

        assert result.exit_code == 0
        payload = json.loads(result.output)
        custom = {(c["label"], c["degree"], c["adams_weight"]) for c in payload["classes"]}
        assert custom == calculator.prismatic.tp_page(2, 0, Window((-8, 8))).signature()
        assert sorted(label for label, _, _ in custom) == expected_tp_labels(2, 0, Window((-8, 8)))
        assert {entry["page"] for entry in payload["differentials"]} == {1, 2}

    def test_tp_json_logs_every_page(self):
        result = _invoke("tp", "-p", "2", "-n", "2", "--format", "json")

        assert result.exit_code == 0
        differentials = json.loads(result.output)["differentials"]
        assert {entry["page"] for entry in differentials} == {1, 2, 4, 8}
        assert all(entry["rank"] > 0 for entry in differentials)

    def test_syntomic_figure_matches_golden(self):
        result = _invoke("syntomic", "-p", "2", "-n", "2", "--window", "-2..26")

        assert result.exit_code == 0
        assert result.output == (GOLDEN / "syntomic_p2_n2.txt").read_text(encoding="utf-8")


class TestErrors:
    """Tests for diagnostics and exit statuses."""

    def test_bad_window(self):
        result = _invoke("syntomic", "--window", "3-4")

        assert result.exit_code == 2
        assert "error[CONFIG]" in result.output

    def test_composite_prime(self):
        result = _invoke("thh", "-p", "4")

        assert result.exit_code == 2
        assert "error[CONFIG]" in result.output

    def test_k_bp2_has_no_chart(self):
        result = _invoke("k-bp2", "--format", "svg")

        assert result.exit_code == 2
        assert "error[CONFIG]" in result.output

    def test_custom_without_window(self, tmp_path):
        path = tmp_path / "nowindow.json"
        path.write_text(
            json.dumps(
                {"p": 2, "generators": [{"name": "x", "kind": "polynomial", "degree": 2, "adams_weight": 0}]}
            ),
            encoding="utf-8",
        )

        result = _invoke("run-custom", "--defs", str(path))

        assert result.exit_code == 2
        assert "error[CONFIG]" in result.output

    def test_parse_error(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")

        result = _invoke("run-custom", "--defs", str(path))

        assert result.exit_code == 2
        assert "error[PARSE_ERROR]" in result.output

    def test_k_bp2_needs_p_at_least_5(self):
        result = _invoke("k-bp2", "-p", "3")

        assert result.exit_code == 2
        assert "error[PRECONDITION]" in result.output
