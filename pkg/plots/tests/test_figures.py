import warnings
from pathlib import Path

import pytest

from paintshop_plots.figures import (
    load_records,
    paired_ratios,
    plot_box,
    plot_kde,
    plot_scatter,
)
from paintshop_plots.cli import main

HEADER = "n,instance,seed,algorithm,swaps,ratio,time_ms,restarts"


def write_csv(path: Path, rows):
    lines = [HEADER]
    for n, instance, algorithm, swaps in rows:
        lines.append(f"{n},{instance},0,{algorithm},{swaps},{swaps / n:.17g},1.0,1")
    path.write_text("\n".join(lines) + "\n")


@pytest.fixture
def fixture_csv(tmp_path):
    path = tmp_path / "records.csv"
    rows = []
    for n in (8, 16):
        for i in range(6):
            rows.append((n, i, "rf", n // 2 + (i % 3)))
            rows.append((n, i, "rsg", n // 3 + (i % 2)))
    write_csv(path, rows)
    return path


class TestLoading:
    def test_roundtrip(self, fixture_csv):
        records = load_records(fixture_csv)
        assert len(records) == 24
        assert {r.algorithm for r in records} == {"rf", "rsg"}

    def test_rejects_other_schema(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError):
            load_records(bad)


class TestBox:
    def test_two_by_two(self, fixture_csv, tmp_path):
        out = plot_box(load_records(fixture_csv), ["rf", "rsg"], tmp_path / "box.png")
        assert out.exists() and out.stat().st_size > 0

    def test_empty_selection(self, fixture_csv, tmp_path):
        with pytest.raises(ValueError):
            plot_box(load_records(fixture_csv), [], tmp_path / "box.png")

    def test_missing_algorithm(self, fixture_csv, tmp_path):
        with pytest.raises(ValueError):
            plot_box(load_records(fixture_csv), ["nope"], tmp_path / "box.png")

    def test_deterministic_bytes(self, fixture_csv, tmp_path):
        records = load_records(fixture_csv)
        a = plot_box(records, ["rf"], tmp_path / "a.png")
        b = plot_box(records, ["rf"], tmp_path / "b.png")
        assert a.read_bytes() == b.read_bytes()


class TestKde:
    def test_curve_per_size(self, fixture_csv, tmp_path):
        out = plot_kde(load_records(fixture_csv), "rf", tmp_path / "kde.png")
        assert out.exists() and out.stat().st_size > 0

    def test_single_record_size_skipped(self, tmp_path):
        path = tmp_path / "records.csv"
        rows = [(8, i, "rf", 4 + i % 2) for i in range(5)] + [(16, 0, "rf", 8)]
        write_csv(path, rows)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            plot_kde(load_records(path), "rf", tmp_path / "kde.png")
        assert any("skipping n=16" in str(w.message) for w in caught)

    def test_all_sizes_degenerate(self, tmp_path):
        path = tmp_path / "records.csv"
        write_csv(path, [(8, 0, "rf", 4)])
        with pytest.raises(ValueError):
            plot_kde(load_records(path), "rf", tmp_path / "kde.png")


class TestScatter:
    def test_point_count_is_shared_instances(self, fixture_csv, tmp_path):
        records = load_records(fixture_csv)
        pairs = paired_ratios(records, "rf", "rsg")
        assert len(pairs) == 12
        out = plot_scatter(records, "rf", "rsg", tmp_path / "scatter.png")
        assert out.exists() and out.stat().st_size > 0

    def test_same_algorithm_sits_on_diagonal(self, fixture_csv):
        records = load_records(fixture_csv)
        pairs = paired_ratios(records, "rf", "rf")
        assert all(x == y for x, y in pairs)

    def test_disjoint_instances_error(self, tmp_path):
        path = tmp_path / "records.csv"
        write_csv(path, [(8, 0, "rf", 4), (8, 1, "rsg", 3)])
        with pytest.raises(ValueError):
            plot_scatter(load_records(path), "rf", "rsg", tmp_path / "s.png")


class TestCli:
    def test_box_subcommand(self, fixture_csv, tmp_path):
        out = tmp_path / "cli_box.png"
        code = main(
            ["box", "--records", str(fixture_csv), "--algorithms", "rf,rsg", "--out", str(out)]
        )
        assert code == 0 and out.exists()

    def test_error_exit(self, fixture_csv, tmp_path):
        code = main(
            ["kde", "--records", str(fixture_csv), "--algorithm", "nope", "--out", str(tmp_path / "x.png")]
        )
        assert code == 1
