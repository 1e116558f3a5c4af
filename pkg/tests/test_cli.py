import json
import os
import subprocess
import sys

import pytest

from conekit.cli import main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SCN = os.path.join(ROOT, "scenarios")


def run_cli(args):
    return main(args)


class TestRun:
    def test_minkowski_p2_all_pass(self, tmp_path, capsys):
        out = tmp_path / "rep.json"
        code = run_cli(["run", os.path.join(SCN, "minkowski_p2.json"), "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert all(t["status"] == "pass" for t in report["tasks"])

    def test_p1_counterexample_fails_with_witness(self, tmp_path, capsys):
        out = tmp_path / "rep.json"
        code = run_cli(["run", os.path.join(SCN, "p1_counterexample.json"), "--out", str(out)])
        assert code == 1
        report = json.loads(out.read_text())
        (task,) = report["tasks"]
        assert task["status"] == "fail"
        assert task["witness"]["v"] == ["1/1", "1/1"]
        assert task["witness"]["w"] == ["1/1", "-1/1"]
        assert task["metrics"]["residual"] == "-4/1"

    def test_malformed_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "malformed.json"
        bad.write_text("{not json")
        assert run_cli(["run", str(bad)]) == 2

    def test_missing_schema_exits_2(self, tmp_path, capsys):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({"tasks": []}))
        assert run_cli(["run", str(f)]) == 2

    def test_unknown_task_kind_exits_2(self, tmp_path, capsys):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({"schema": "conekit/1", "tasks": [{"kind": "nope"}]}))
        assert run_cli(["run", str(f)]) == 2


def strip_times(report):
    for t in report["tasks"]:
        t.pop("wall_time_ms", None)
    return report


class TestDeterminism:
    def test_repeat_runs_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        scenario = os.path.join(SCN, "minkowski_p2.json")
        assert run_cli(["run", scenario, "--out", str(a), "--seed", "42"]) == 0
        assert run_cli(["run", scenario, "--out", str(b), "--seed", "42"]) == 0
        ra = strip_times(json.loads(a.read_text()))
        rb = strip_times(json.loads(b.read_text()))
        assert json.dumps(ra, sort_keys=True) == json.dumps(rb, sort_keys=True)

    def test_env_seed(self, tmp_path, capsys, monkeypatch):
        f = tmp_path / "s.json"
        f.write_text(
            json.dumps(
                {
                    "schema": "conekit/1",
                    "name": "seeded",
                    "tasks": [{"kind": "span", "trials": 20, "seed": 1}],
                }
            )
        )
        monkeypatch.setenv("CONEKIT_SEED", "7")
        assert run_cli(["run", str(f)]) == 0


class TestProptest:
    def test_single_suite(self, capsys):
        assert run_cli(["proptest", "--suite", "span", "--trials", "20"]) == 0
        assert "span: pass" in capsys.readouterr().out


class TestGram:
    def test_gram_output(self, capsys):
        code = run_cli(["gram", "--spatial-dim", "1", "--basis", '[["1","0"],["1","1"]]'])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["gram"] == [["1/1", "1/1"], ["1/1", "0/1"]]
        assert out["standard"] == [["1/1", "0/1"], ["0/1", "-1/1"]]
        assert out["signature"]["kind"] == "lorentzian"


class TestExtend:
    def test_extend_value(self, capsys):
        code = run_cli(
            ["extend", "--cone", '{"family":"future","spatial_dim":1}', "--x", "[0, 1]"]
        )
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert abs(out["value"] - 2**0.5) < 1e-3


class TestReportCsv:
    def test_csv(self, tmp_path, capsys):
        rep = tmp_path / "r.json"
        run_cli(["run", os.path.join(SCN, "p1_counterexample.json"), "--out", str(rep)])
        capsys.readouterr()
        assert run_cli(["report", str(rep)]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("task,status")
        assert lines[1].startswith("polarizability-p1,fail")


class TestConsoleScript:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "conekit.cli", "proptest", "--suite", "span", "--trials", "5"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
