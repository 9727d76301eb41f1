import subprocess
import sys

from paintshop.cli import main
from paintshop.instances import parse_instances


def run_cli(args, stdin_text=None):
    proc = subprocess.run(
        [sys.executable, "-m", "paintshop.cli", *args],
        input=stdin_text,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


class TestGen:
    def test_writes_valid_instances(self, tmp_path):
        out = tmp_path / "instances.txt"
        code = main(["gen", "-n", "3", "-c", "2", "--seed", "7", "-o", str(out)])
        assert code == 0
        instances = parse_instances(out.read_text().splitlines())
        assert len(instances) == 2
        assert all(x.n == 3 for x in instances)

    def test_single_car(self, capsys):
        assert main(["gen", "-n", "1", "-c", "1", "--seed", "0"]) == 0
        assert capsys.readouterr().out == "1 1\n"

    def test_zero_cars_exits_2(self):
        code, _, err = run_cli(["gen", "-n", "0", "-c", "1"])
        assert code == 2


class TestSolve:
    def test_brute_on_t(self, tmp_path):
        src = tmp_path / "t.txt"
        src.write_text("1 2 1 3 3 2\n")
        code, out, _ = run_cli(["solve", str(src), "--algorithm", "brute"])
        assert code == 0
        n, swaps, ratio, coloring = out.split()
        assert (n, swaps) == ("3", "2")
        assert abs(float(ratio) - 2 / 3) < 1e-15
        assert coloring in ("rbbbrr", "brrrbb")

    def test_star_greedy_on_showcase(self, tmp_path):
        src = tmp_path / "w.txt"
        src.write_text("5 1 1 3 2 2 5 4 3 6 6 4\n")
        code, out, _ = run_cli(["solve", str(src), "--algorithm", "rsg"])
        assert code == 0
        assert out.split()[1] == "4"

    def test_red_first_stdin(self):
        code, out, _ = run_cli(["solve", "-", "--algorithm", "rf"], stdin_text="1 1\n")
        assert code == 0
        assert out.split()[:2] == ["1", "1"]

    def test_rqaoa_trace_on_stderr(self):
        code, out, err = run_cli(
            ["solve", "-", "--algorithm", "rqaoa", "--cutoff", "2", "--trace"],
            stdin_text="1 2 1 3 3 2\n",
        )
        assert code == 0
        assert out.split()[1] == "2"
        trace_lines = [l for l in err.splitlines() if l.startswith("step ")]
        assert len(trace_lines) == 1  # one contraction from 3 variables to 2
        fields = trace_lines[0].split()
        assert len(fields) == 5 and fields[3] in ("+1", "-1")

    def test_unknown_algorithm_exits_2(self, tmp_path):
        src = tmp_path / "t.txt"
        src.write_text("1 1\n")
        code, _, _ = run_cli(["solve", str(src), "--algorithm", "annealer"])
        assert code == 2

    def test_invalid_instance_exits_1(self):
        code, _, err = run_cli(["solve", "-", "--algorithm", "rf"], stdin_text="1 2 1\n")
        assert code == 1
        assert "invalid instance" in err


class TestReduce:
    def test_graph_export(self):
        code, out, _ = run_cli(["reduce", "-", "--format", "graph"], stdin_text="1 2 1 3 3 2\n")
        assert code == 0
        assert out == "3 2\n1 3 1\n2 3 -1\n"

    def test_ising_export(self):
        code, out, _ = run_cli(["reduce", "-", "--format", "ising"], stdin_text="1 2 1 3 3 2\n")
        assert code == 0
        assert out == "3 3 1\n1 3 1 2\n2 3 -1 2\n"

    def test_edgeless_graph(self):
        code, out, _ = run_cli(["reduce", "-", "--format", "graph"], stdin_text="1 1\n")
        assert code == 0
        assert out == "1 0\n"


class TestValidate:
    def test_default_passes(self, capsys):
        assert main(["validate", "--trials", "5", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert "result: pass" in out

    def test_zero_trials(self, capsys):
        assert main(["validate", "--trials", "0"]) == 0
        out = capsys.readouterr().out
        assert "checks run: 0" in out

    def test_fault_injection_fails(self):
        from paintshop.checks import run_validation

        report = run_validation(seed=1, trials=3, inject_fault=True)
        assert not report.passed


class TestBench:
    def test_smoke_and_rerun_identical(self, tmp_path, capsys):
        records = tmp_path / "records.csv"
        summary = tmp_path / "summary.csv"
        config = tmp_path / "bench.cfg"
        config.write_text(
            "sizes = 1\ninstances = 1\nalgorithms = rf, greedy, rg, rsg\n"
            f"seed = 5\nrecords = {records}\nsummary = {summary}\n"
        )
        assert main(["bench", str(config)]) == 0
        capsys.readouterr()
        first = records.read_text()
        assert first.splitlines()[0] == "n,instance,seed,algorithm,swaps,ratio,time_ms,restarts"
        assert summary.read_text().splitlines()[0] == "algorithm,n,count,mean,std,min,max"
        assert main(["bench", str(config)]) == 0

        def strip(text):
            rows = []
            for line in text.splitlines():
                parts = line.split(",")
                if len(parts) == 8 and parts[0] != "n":
                    parts[6] = "-"
                rows.append(",".join(parts))
            return rows

        assert strip(first) == strip(records.read_text())

    def test_bad_config_exits_2(self, tmp_path):
        config = tmp_path / "bench.cfg"
        config.write_text("nonsense = 1\n")
        code, _, _ = run_cli(["bench", str(config)])
        assert code == 2
