"""Command-line interface: exit codes, report schema, determinism, and
replay of stored reports."""
import json

import pytest
from click.testing import CliRunner

from garside_wb import cli
from garside_wb import coxeter as cx

THETA = {
    "vertices": ["a", "b", "p", "x", "y"],
    "edges": [["a", "p", 3], ["p", "b", 3], ["a", "x", 3],
              ["x", "b", 3], ["a", "y", 3], ["y", "b", 3]],
}
A3 = {
    "vertices": ["s", "t", "u"],
    "edges": [["s", "t", 3], ["t", "u", 3]],
}


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def theta_file(tmp_path):
    path = tmp_path / "theta.json"
    path.write_text(json.dumps(THETA))
    return str(path)


@pytest.fixture
def a3_file(tmp_path):
    path = tmp_path / "a3.json"
    path.write_text(json.dumps(A3))
    return str(path)


def invoke(runner, tmp_path, *args):
    return runner.invoke(cli.main,
                         ["--cache-dir", str(tmp_path / "cache")] + list(args))


def report_of(result):
    assert result.stdout, result.stderr
    return json.loads(result.stdout)


def stable_part(report):
    return {k: v for k, v in report.items()
            if k not in cli.VOLATILE_FIELDS}


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self, runner):
        result = runner.invoke(cli.main, ["mincut", "enum", "--bogus"])
        assert result.exit_code == 2

    def test_missing_file_is_usage_error(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "mincut", "enum",
                        "--graph", "no-such.json", "--A", "a", "--B", "b")
        assert result.exit_code == 2

    def test_violation_exits_one(self, runner, tmp_path):
        # the right-side join of this L-shape escapes the subcomplex
        result = invoke(runner, tmp_path, "garside", "convex",
                        "--instance", "zn:3",
                        "--members", "0,0,0;1,0,0;0,1,0",
                        "--side", "right", "--seed", "5")
        assert result.exit_code == 1
        report = report_of(result)
        assert report["status"] == "violation"
        assert report["counterexamples"]

    def test_truncation_exits_three(self, runner, tmp_path, monkeypatch):
        def boom(self, radius, cache_dir=None):
            raise cx.TruncationError("ball exceeds the element cap")

        monkeypatch.setattr(cx.GroupEngine, "ball", boom)
        a3 = tmp_path / "a3.json"
        a3.write_text(json.dumps(A3))
        result = invoke(runner, tmp_path, "coxeter", "ball",
                        "--graph", str(a3), "--radius", "2")
        assert result.exit_code == 3
        assert report_of(result)["status"] == "truncated"


class TestMincutCommands:
    def test_enum_theta(self, runner, tmp_path, theta_file):
        result = invoke(runner, tmp_path, "mincut", "enum",
                        "--graph", theta_file, "--A", "a", "--B", "b")
        assert result.exit_code == 0
        report = report_of(result)
        assert report["result"]["cuts"] == [["a"], ["b"], ["p", "x", "y"]]

    def test_lattice_check_passes(self, runner, tmp_path, theta_file):
        result = invoke(runner, tmp_path, "mincut", "lattice-check",
                        "--graph", theta_file, "--A", "a", "--B", "b")
        assert result.exit_code == 0
        assert report_of(result)["counterexamples"] == []


class TestOrderCommands:
    def test_cp_family(self, runner, tmp_path, theta_file):
        result = invoke(runner, tmp_path, "order", "cp",
                        "--graph", theta_file, "--path", "a,p,b")
        assert result.exit_code == 0
        report = report_of(result)
        assert report["result"]["type_i"] == [["p"]]
        assert ["x", "y"] in report["result"]["type_ii"]

    def test_cyclic_check_passes(self, runner, tmp_path, theta_file):
        result = invoke(runner, tmp_path, "order", "cyclic-check",
                        "--graph", theta_file, "--path", "a,p,b")
        assert result.exit_code == 0

    def test_admissible_passes(self, runner, tmp_path, theta_file):
        result = invoke(runner, tmp_path, "order", "admissible",
                        "--graph", theta_file, "--path", "a,p,b")
        assert result.exit_code == 0
        assert report_of(result)["result"]["scope"] == "type II"


class TestCoxeterCommands:
    def test_ball_sizes(self, runner, tmp_path, a3_file):
        result = invoke(runner, tmp_path, "coxeter", "ball",
                        "--graph", a3_file, "--radius", "6")
        assert result.exit_code == 0
        report = report_of(result)
        assert report["result"]["size"] == 24  # all of S_4

    def test_gate_word(self, runner, tmp_path, a3_file):
        result = invoke(runner, tmp_path, "coxeter", "gate",
                        "--graph", a3_file, "--word", "s,t,u",
                        "--subset", "s,t")
        assert result.exit_code == 0
        report = report_of(result)
        # stu = st . u, so the nearest point of W_{s,t} is st
        assert report["result"]["gate_word"] == ["s", "t"]
        assert report["result"]["distance"] == 1

    def test_spherical(self, runner, tmp_path, a3_file):
        result = invoke(runner, tmp_path, "coxeter", "spherical",
                        "--graph", a3_file)
        report = report_of(result)
        assert report["result"]["spherical"] is True
        assert ["s", "t", "u"] in report["result"]["spherical_subsets"]

    def test_window_with_dot_export(self, runner, tmp_path, a3_file):
        dot = tmp_path / "win.dot"
        result = invoke(runner, tmp_path, "coxeter", "window",
                        "--graph", a3_file, "--types", "s,t,u",
                        "--radius", "6", "--dot", str(dot))
        assert result.exit_code == 0
        assert report_of(result)["result"]["vertices"] == 14
        text = dot.read_text()
        assert text.startswith("graph G {") and " -- " in text

    def test_dot_export_limit(self, runner, tmp_path, a3_file,
                              monkeypatch):
        monkeypatch.setattr(cli, "DOT_VERTEX_LIMIT", 3)
        result = invoke(runner, tmp_path, "coxeter", "window",
                        "--graph", a3_file, "--types", "s,t,u",
                        "--radius", "6", "--dot", str(tmp_path / "w.dot"))
        assert result.exit_code == 2


class TestGarsideCommands:
    def test_nf_example(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "garside", "nf",
                        "--instance", "zn:3",
                        "--from", "0,0,0", "--to", "2,1,0")
        assert result.exit_code == 0
        left = report_of(result)["result"]["left"]
        assert left["k"] == 0
        assert left["simples"] == [[1, 1, 0], [1, 0, 0]]

    def test_braid_nf(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "garside", "nf",
                        "--instance", "braid:3",
                        "--from", "", "--to", "1,2,1")
        assert result.exit_code == 0
        assert report_of(result)["result"]["left"]["k"] == 1

    def test_bgeo_and_dist(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "garside", "bgeo",
                        "--instance", "zn:3",
                        "--from", "0,0,0", "--to", "2,1,0")
        assert report_of(result)["result"]["length"] == 2
        result = invoke(runner, tmp_path, "garside", "dist",
                        "--instance", "zn:3",
                        "--from", "0,0,0", "--to", "2,0,0")
        report = report_of(result)
        assert (report["result"]["forward"], report["result"]["backward"]) \
            == (2, 4)

    def test_check_clean_window(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "garside", "check",
                        "--instance", "zn:3", "--radius", "3")
        assert result.exit_code == 0
        assert report_of(result)["result"]["h1_trivial"] is True

    def test_bad_instance_is_usage_error(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "garside", "nf",
                        "--instance", "free:3",
                        "--from", "0", "--to", "1")
        assert result.exit_code == 2


class TestInstanceBuild:
    def test_zn(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "instance", "build",
                        "--kind", "zn", "--n", "3", "--radius", "2")
        assert result.exit_code == 0
        assert report_of(result)["result"]["period"] == 3

    def test_braid(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "instance", "build",
                        "--kind", "braid", "--n", "4")
        report = report_of(result)
        assert report["result"]["simples"] == 23
        assert report["result"]["delta_length"] == 6

    def test_missing_kind_flags(self, runner, tmp_path):
        result = invoke(runner, tmp_path, "instance", "build",
                        "--kind", "zn")
        assert result.exit_code == 2

    def test_mincut_shadow(self, runner, tmp_path, theta_file):
        result = invoke(runner, tmp_path, "instance", "build",
                        "--kind", "mincut-shadow", "--graph", theta_file,
                        "--path", "a,p,b", "--radius", "2")
        assert result.exit_code == 0
        link = report_of(result)["result"]["link_report"]
        assert link["failed"] == 0 and link["passed"] > 0


class TestExperimentAndReplay:
    ARGS = ("experiment", "four-cycle", "--types", "s,t,u",
            "--radius", "6", "--s", "s", "--t", "t",
            "--subdiagram", "s,t,u", "--seed", "11")

    def test_report_is_byte_stable(self, runner, tmp_path, a3_file):
        outputs = []
        for _ in range(2):
            result = invoke(runner, tmp_path, self.ARGS[0], self.ARGS[1],
                            "--graph", a3_file, *self.ARGS[2:])
            assert result.exit_code == 0
            report = report_of(result)
            assert report["seed"] == 11
            outputs.append(json.dumps(stable_part(report), sort_keys=True))
        assert outputs[0] == outputs[1]

    def test_verify_roundtrip(self, runner, tmp_path, a3_file):
        result = invoke(runner, tmp_path, self.ARGS[0], self.ARGS[1],
                        "--graph", a3_file, *self.ARGS[2:])
        stored = tmp_path / "report.json"
        stored.write_text(result.stdout)
        result = invoke(runner, tmp_path, "report", "verify",
                        "--report", str(stored))
        assert result.exit_code == 0
        assert report_of(result)["reproduced"] is True

    def test_verify_rejects_tampering(self, runner, tmp_path, a3_file):
        result = invoke(runner, tmp_path, self.ARGS[0], self.ARGS[1],
                        "--graph", a3_file, *self.ARGS[2:])
        report = json.loads(result.stdout)
        report["verdicts"] = [{"case": "tampered"}]
        stored = tmp_path / "report.json"
        stored.write_text(json.dumps(report))
        result = invoke(runner, tmp_path, "report", "verify",
                        "--report", str(stored))
        assert result.exit_code == 1
        assert "verdicts" in report_of(result)["mismatched_fields"]

    def test_verify_rejects_hash_mismatch(self, runner, tmp_path, a3_file):
        result = invoke(runner, tmp_path, self.ARGS[0], self.ARGS[1],
                        "--graph", a3_file, *self.ARGS[2:])
        report = json.loads(result.stdout)
        report["params"]["seed"] = 12
        stored = tmp_path / "report.json"
        stored.write_text(json.dumps(report))
        result = invoke(runner, tmp_path, "report", "verify",
                        "--report", str(stored))
        assert result.exit_code == 1
