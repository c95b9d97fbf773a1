import json
import subprocess
import sys

import pytest

from cbr.cli import main
from cbr.specio import emit_spec, fixture_plot_vs_binary, load_fixture


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "plot_vs_binary.json"
    path.write_text(emit_spec(fixture_plot_vs_binary()))
    return str(path)


@pytest.fixture
def tunable_file(tmp_path):
    spec = load_fixture("overview_interaction").spec
    data = dict(spec.data)
    data["param_space"] = {
        "dimensions": [
            {
                "target": "transform:zoom",
                "field": "declared_distortion_bits",
                "values": [0.0, 0.5, 2.0],
            },
            {"target": "transform:zoom", "field": "cost_amount", "values": [1.0, 2.0]},
        ]
    }
    path = tmp_path / "tunable.json"
    path.write_text(json.dumps(data, indent=2))
    return str(path)


class TestExitCodes:
    def test_validate_ok(self, spec_file, capsys):
        assert main(["validate", spec_file]) == 0
        assert "valid" in capsys.readouterr().out

    def test_validate_missing_file(self, capsys):
        assert main(["validate", "/nonexistent/spec.json"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_validate_malformed(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["validate", str(bad)]) == 1
        assert "malformed JSON" in capsys.readouterr().err

    def test_validate_semantic_error(self, tmp_path, capsys):
        spec = json.loads(emit_spec(fixture_plot_vs_binary()))
        spec["graph"]["edges"][0]["transform"] = "ghost"
        bad = tmp_path / "dangling.json"
        bad.write_text(json.dumps(spec))
        assert main(["validate", str(bad)]) == 1
        assert "dangling reference" in capsys.readouterr().err

    def test_unknown_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_required_option_is_usage_error(self, spec_file):
        with pytest.raises(SystemExit) as exc:
            main(["report", spec_file])
        assert exc.value.code == 2

    def test_subprocess_matrix(self, spec_file):
        """End-to-end exit codes through the installed console script."""
        runs = [
            (["validate", spec_file], 0),
            (["validate", "/nonexistent.json"], 1),
            (["nonsense"], 2),
        ]
        for argv, expected in runs:
            proc = subprocess.run(
                [sys.executable, "-m", "cbr.cli", *argv], capture_output=True
            )
            assert proc.returncode == expected, (argv, proc.stderr)


class TestAnalyze:
    def test_table_output(self, spec_file, capsys):
        assert main(["analyze", spec_file]) == 0
        out = capsys.readouterr().out
        assert "overall CBR" in out
        assert "recognize_plot" in out

    def test_json_output(self, spec_file, capsys):
        assert main(["analyze", spec_file, "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert "recognize_plot" in payload["per_edge"]
        assert payload["total_cost"] == pytest.approx(114.0)

    def test_merge_changes_cost(self, spec_file, capsys):
        assert main(["analyze", spec_file, "--json", "--merge", "max_parallel"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["total_cost"] == pytest.approx(102.0)

    def test_mode_override(self, spec_file, capsys):
        assert main(["analyze", spec_file, "--mode", "maximal", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["entropy_mode"] == "maximal"


class TestOptimize:
    def test_exhaustive(self, tunable_file, capsys):
        assert main(["optimize", tunable_file]) == 0
        out = capsys.readouterr().out
        assert "certified global optimum: True" in out
        assert "evaluations: 6" in out

    def test_greedy(self, tunable_file, capsys):
        assert main(["optimize", tunable_file, "--greedy", "--restarts", "2"]) == 0
        assert "certified global optimum: False" in capsys.readouterr().out

    def test_frontier_csv(self, tunable_file, capsys):
        assert main(["optimize", tunable_file, "--frontier"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "assignment,cost,benefit_lo,benefit_hi,cbr_mid"
        assert len(lines) > 1

    def test_infeasible_budget(self, tunable_file, capsys):
        assert main(["optimize", tunable_file, "--budget", "0.1"]) == 1
        assert "infeasible budget" in capsys.readouterr().err


class TestReport:
    def test_dot(self, spec_file, capsys):
        assert main(["report", spec_file, "--format", "dot"]) == 0
        assert capsys.readouterr().out.startswith("digraph workflow {")

    def test_csv(self, spec_file, capsys):
        assert main(["report", spec_file, "--format", "csv"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "step,acr,pdr,ecr,benefit_bits,cost,incremental_cbr"
        assert len(lines) == 7


class TestFixtures:
    def test_all_pass(self, capsys):
        assert main(["fixtures"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "fixture share_price_chain:" in out

    def test_single_fixture(self, capsys):
        assert main(["fixtures", "--name", "plot_vs_binary"]) == 0
        assert "[ok]" in capsys.readouterr().out

    def test_unknown_fixture(self, capsys):
        assert main(["fixtures", "--name", "nonesuch"]) == 2
        assert "unknown fixture" in capsys.readouterr().err
