"""End-to-end checks of the command-line front end and its exit codes."""
import json

import pytest

from rlscycle.cli import main


def run_cli(*argv):
    return main(list(argv))


class TestExitCodes:
    def test_usage_error(self, capsys):
        assert run_cli("run") == 1  # missing -n
        capsys.readouterr()

    def test_unknown_command(self, capsys):
        assert run_cli("frobnicate") == 1
        capsys.readouterr()

    def test_capped_run_fails(self, capsys):
        # 3 iterations will not reach the optimum on a 60-cycle
        assert run_cli("run", "-n", "60", "--max-iters", "3") == 2
        err = capsys.readouterr().err
        assert "cap" in err

    def test_success(self, capsys):
        assert run_cli("run", "-n", "12", "--target", "feasible") == 0
        out = capsys.readouterr().out
        assert "first_feasible" in out


class TestRun:
    def test_events_jsonl(self, tmp_path, capsys):
        path = tmp_path / "events.jsonl"
        code = run_cli(
            "run", "-n", "10", "--record", "full", "--events-out", str(path),
        )
        capsys.readouterr()
        assert code == 0
        lines = path.read_text().strip().splitlines()
        first = json.loads(lines[0])
        assert {"iteration", "operator", "touched", "accepted"} <= first.keys()

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "run.csv"
        assert run_cli("--out", str(path), "run", "-n", "10", "--target", "feasible") == 0
        capsys.readouterr()
        assert "first_feasible" in path.read_text()

    def test_deterministic_given_seed(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            assert run_cli("--seed", "42", "--out", str(p), "run", "-n", "15") == 0
        assert paths[0].read_text() == paths[1].read_text()


class TestCensus:
    def test_csv_output(self, capsys):
        assert run_cli("census", "--ns", "6", "-k", "3") == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "n,k,total,redundant,minimal"
        assert "6,3,14,12,2" in out

    def test_verify_minimum(self, capsys):
        assert run_cli("census", "--ns", "6,9", "--verify-minimum") == 0
        capsys.readouterr()


class TestExperiment:
    def test_feasibility_grid(self, tmp_path, capsys):
        path = tmp_path / "plot.csv"
        code = run_cli(
            "--out", str(path), "experiment", "--kind", "feasibility",
            "--ns", "10,20,40", "--seeds", "10",
        )
        capsys.readouterr()
        assert code == 0
        text = path.read_text()
        assert text.splitlines()[0] == "n,mean,se,bound"
        assert "# slope=" in text

    def test_trial_chain_kind(self, capsys):
        assert run_cli("experiment", "--kind", "trial-chain", "--ns", "10", "--seeds", "1") == 0
        capsys.readouterr()


class TestResistance:
    def test_grids(self, capsys):
        assert run_cli("resistance", "--triangle", "6", "--square", "6") == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "family,n,value,bound"
        assert any(line.startswith("square,6,") for line in out.splitlines())

    def test_nothing_requested(self, capsys):
        assert run_cli("resistance") == 1
        capsys.readouterr()

    def test_edge_list(self, tmp_path, capsys):
        edges = tmp_path / "edges.txt"
        edges.write_text("a b 1.0\nb c 1.0\n")
        assert run_cli("resistance", "--edges", str(edges)) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "s,t,resistance"
        row = [l for l in out.splitlines() if l.startswith("a,c")][0]
        assert float(row.split(",")[2]) == pytest.approx(2.0)


class TestOtherCommands:
    def test_trial_chain(self, capsys):
        assert run_cli("trial-chain", "-n", "10") == 0
        out = capsys.readouterr().out
        header, row = out.strip().splitlines()
        assert header == "n,p_success,expected_restart_time"
        _, p_success, restart = row.split(",")
        assert float(p_success) == pytest.approx(0.5, abs=1e-12)
        assert float(restart) == pytest.approx(40.0, rel=1e-12)

    def test_equivalence(self, capsys):
        assert run_cli("equivalence", "--max-n", "8") == 0
        capsys.readouterr()

    def test_fixed_arc_exact(self, capsys):
        assert run_cli("fixed-arc", "-n", "12", "-k", "5") == 0
        capsys.readouterr()


class TestConfigFile:
    def test_defaults_from_file(self, tmp_path, capsys):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "# experiment defaults\n"
            "kind = feasibility\n"
            "ns = 10,20\n"
            "seeds = 5\n"
            "seed = 7\n"
        )
        code = run_cli("--config", str(cfg), "experiment", "--kind", "feasibility", "--ns", "10,20")
        capsys.readouterr()
        assert code == 0

    def test_flag_overrides_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("max-iters = 3\n")
        # config alone caps the run ...
        assert run_cli("--config", str(cfg), "run", "-n", "60") == 2
        # ... but an explicit flag wins
        assert run_cli("--config", str(cfg), "run", "-n", "60",
                       "--max-iters", "100000", "--target", "feasible") == 0
        capsys.readouterr()

    def test_missing_config(self, capsys):
        assert run_cli("--config", "/nonexistent/x.cfg", "run", "-n", "10") == 1
        capsys.readouterr()
