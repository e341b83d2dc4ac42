import json
import shutil
from fractions import Fraction
from pathlib import Path
from unittest.mock import MagicMock, patch

import pytest

from src.cli.command_line import UsageError, build_parser, main, parse_generator, run
from src.cli.reports import StructuredReport
from src.enumerator.subgroup_enumerator import AmbientCapExceededError
from src.realizability.witness_builder import NotRealizableError
from src.torsion_lattice.lattice_class import LatticeClass

CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"


class TestParseGenerator:
    @pytest.mark.parametrize("token, expected", [
        ("1,0,0", (1, Fraction(0), Fraction(0))),
        ("(2:1/7:3/7)", (2, Fraction(1, 7), Fraction(3, 7))),
        (" 0, 1/2 , 1/2 ", (0, Fraction(1, 2), Fraction(1, 2))),
        ("-1,0,0", (-1, Fraction(0), Fraction(0))),
    ])
    def test_forms(self, token, expected):
        assert parse_generator(token) == expected

    def test_torsion_numerators(self):
        assert parse_generator("0,3,1", torsion=7) == (0, Fraction(3, 7), Fraction(1, 7))

    @pytest.mark.parametrize("token", ["1,2", "a,0,0", "1,1/0,0", "", "1;0;0"])
    def test_malformed(self, token):
        with pytest.raises(UsageError):
            parse_generator(token)


class TestBuildParser:
    def test_classify_arguments(self):
        args = build_parser().parse_args(["classify", "1,0,0", "0,1/2,0", "--lattice", "sq", "--torsion", "4"])
        assert args.command == "classify"
        assert args.lattice is LatticeClass.SQUARE
        assert args.generators == ["1,0,0", "0,1/2,0"]
        assert args.torsion == 4
        assert args.format == "human"

    def test_snapshot_flag(self):
        parser = build_parser()
        assert parser.parse_args(["enumerate", "--lattice", "hex", "--torsion", "3"]).snapshot is None
        assert parser.parse_args(["enumerate", "--lattice", "hex", "--torsion", "3", "--snapshot"]).snapshot == ""

    @pytest.mark.parametrize("argv", [
        [],
        ["classify", "--lattice", "cube", "1,0,0"],
        ["enumerate", "--lattice", "hex"],
        ["enumerate", "--lattice", "hex", "--torsion", "0"],
        ["verify-paper", "--seed", "-3"],
        ["degree", "x", "--format", "xml"],
        ["solve"],
    ])
    def test_usage_errors_raise(self, argv):
        with pytest.raises(UsageError):
            build_parser().parse_args(argv)


class TestRun:
    @pytest.fixture
    def orchestrator(self):
        return MagicMock()

    def _run(self, argv, orchestrator):
        return run(build_parser().parse_args(argv), orchestrator)

    def test_classify_dispatch(self, orchestrator):
        self._run(["classify", "1,0,0", "--lattice", "square"], orchestrator)
        orchestrator.classify_generators.assert_called_once_with(
            LatticeClass.SQUARE, [(1, Fraction(0), Fraction(0))], cap=None)

    def test_classify_needs_generators(self, orchestrator):
        with pytest.raises(UsageError):
            self._run(["classify", "--lattice", "square"], orchestrator)

    def test_verify_dispatch(self, orchestrator):
        self._run(["verify-paper", "--example", "13", "--seed", "5"], orchestrator)
        orchestrator.verify_registry.assert_called_once_with(13, seed=5)

    def test_verify_alias_dispatch(self, orchestrator):
        self._run(["verify-covers", "--example", "14"], orchestrator)
        orchestrator.verify_registry.assert_called_once_with(14, seed=None)

    def test_degree_dispatch(self, orchestrator):
        self._run(["degree", "y/x", "--field", "Q(e3)", "--weierstrass", "0", "1"], orchestrator)
        orchestrator.degree.assert_called_once_with("y/x", example_id=None, field_tag="Q(e3)",
                                                    p="0", q="1", seed=None)

    def test_census_sweep_needs_both_flags(self, orchestrator):
        with pytest.raises(UsageError):
            self._run(["census-check", "--lattice", "square"], orchestrator)

    def test_census_sweep(self, orchestrator):
        self._run(["census-check", "--lattice", "square", "--torsion", "2", "--extended"], orchestrator)
        orchestrator.census_check.assert_called_once_with([("square", 2)], extended=True, compare=None, cap=None)

    def test_not_realizable_is_a_failed_verdict(self, orchestrator):
        orchestrator.realize_label.side_effect = NotRealizableError("no h", "exists_h")
        report = self._run(["realize", "E(4,4)"], orchestrator)
        assert report.status == "fail"
        assert report.payload["condition"] == "exists_h"


class TestMainWithMockedOrchestrator:
    @patch("src.cli.command_line.Orchestrator")
    def test_pass_exit_code(self, mock_orchestrator, capsys):
        mock_orchestrator.return_value.galois_check.return_value = StructuredReport.verdict(
            "galois-check", True, {"label": "Z6"})
        assert main(["galois-check", "Z6", "--format", "structured"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["status"] == "pass"
        mock_orchestrator.assert_called_once_with(config_dir="./config", log_file=None)

    @patch("src.cli.command_line.Orchestrator")
    def test_cap_exit_code(self, mock_orchestrator, capsys):
        mock_orchestrator.return_value.enumerate.side_effect = AmbientCapExceededError("too many elements")
        assert main(["enumerate", "--lattice", "hex", "--torsion", "9", "--format", "structured"]) == 3
        record = json.loads(capsys.readouterr().out)
        assert record["status"] == "error"
        assert record["command"] == "enumerate"
        assert record["payload"]["type"] == "AmbientCapExceededError"

    @patch("src.cli.command_line.Orchestrator")
    def test_internal_exit_code(self, mock_orchestrator, capsys):
        mock_orchestrator.return_value.galois_check.side_effect = RuntimeError("boom")
        assert main(["galois-check", "Z6"]) == 4
        assert "boom" in capsys.readouterr().out

    def test_usage_error_keeps_structured_format(self, capsys):
        assert main(["enumerate", "--lattice", "hex", "--format", "structured"]) == 2
        record = json.loads(capsys.readouterr().out)
        assert record["command"] == "enumerate"
        assert record["status"] == "error"

    def test_missing_command(self, capsys):
        assert main([]) == 2
        assert "error" in capsys.readouterr().out


class TestMainEndToEnd:
    @pytest.fixture
    def common(self, tmp_path, monkeypatch):
        # the registry path in app_config.yaml is relative to the working directory
        shutil.copytree(CONFIG_DIR, tmp_path / "config")
        monkeypatch.chdir(tmp_path)
        return ["--format", "structured", "--config-dir", str(tmp_path / "config"), "--log-file", str(tmp_path / "run.log")]

    def test_verify_single_registry_entry(self, common, capsys):
        assert main(["verify-paper", "--example", "18"] + common) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["command"] == "verify-paper"
        assert record["status"] == "pass"
        (result,) = record["payload"]["results"]
        assert result["degree"] == 9
        assert result["expected_group"] == "Z3^2"

    def test_verify_alias_reports_canonical_command(self, common, capsys):
        assert main(["verify-covers", "--example", "8"] + common) == 0
        assert json.loads(capsys.readouterr().out)["command"] == "verify-paper"

    def test_malformed_seed_environment_is_a_usage_error(self, common, capsys, monkeypatch):
        monkeypatch.setenv("GALOIS_TOOLKIT_SEED", "not-a-seed")
        assert main(["degree", "y"] + common) == 2
        record = json.loads(capsys.readouterr().out)
        assert record["payload"]["type"] == "InvalidSeedError"

    def test_classify_rotation(self, common, capsys):
        assert main(["classify", "1,0,0", "--lattice", "square"] + common) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["version"] == "1.0"
        assert record["payload"]["label"] == "Z4"
        assert record["payload"]["order"] == 4

    def test_classify_order_21(self, common, capsys):
        assert main(["classify", "2,0,0", "0,2,1", "--lattice", "hex", "--torsion", "7"] + common) == 0
        payload = json.loads(capsys.readouterr().out)["payload"]
        assert payload["label"] == "E(7,3)"
        assert payload["order"] == 21

    def test_classify_cap(self, common, capsys):
        assert main(["classify", "1,0,0", "--lattice", "square", "--cap", "2"] + common) == 3

    def test_galois_check_fails(self, common, capsys):
        assert main(["galois-check", "Z5"] + common) == 1
        assert json.loads(capsys.readouterr().out)["payload"]["failure_reason"] == "|G_0| = 1"

    def test_bad_label(self, common, capsys):
        assert main(["realize", "Q5"] + common) == 2
        assert json.loads(capsys.readouterr().out)["payload"]["type"] == "LabelParseError"

    def test_realize(self, common, capsys):
        assert main(["realize", "E(13,4)"] + common) == 0
        payload = json.loads(capsys.readouterr().out)["payload"]
        assert payload["closure_order"] == 52
        assert payload["classified_as"] == "E(13,4)"

    def test_degree(self, common, capsys):
        assert main(["degree", "y", "--seed", "7"] + common) == 0
        payload = json.loads(capsys.readouterr().out)["payload"]
        assert payload["degree"] == 3
        assert payload["seed"] == 7

    def test_human_format(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        argv = ["galois-check", "Z6", "--config-dir", str(CONFIG_DIR), "--log-file", str(tmp_path / "run.log")]
        assert main(argv) == 0
        assert capsys.readouterr().out.startswith("galois-check: pass")
