# tests/integration/test_cli.py
import io
import logging

import pytest

from src.api.cli import fmt, main, parse_range, run
from src.models.schemas import CommandInvocation, Subcommand

pytestmark = pytest.mark.integration


@pytest.fixture(autouse=True)
def restore_root_logger():
    """main() installs its own handlers; put the previous ones back"""
    root = logging.getLogger()
    saved_handlers, saved_level = root.handlers[:], root.level
    yield
    root.handlers[:] = saved_handlers
    root.setLevel(saved_level)


def call(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGraphCommands:
    def test_ratio_of_c6(self, capsys):
        code, out, _ = call(["ratio", "cycle:6"], capsys)
        assert code == 0
        assert out == "r=0.25 lambda2=1 lambdaN=4\n"

    def test_ratio_with_added_chord(self, capsys):
        code, out, _ = call(["ratio", "cycle:5", "--add-edge", "0,2"], capsys)
        assert code == 0
        values = dict(item.split("=") for item in out.split())
        assert float(values["r"]) == pytest.approx(0.2993, abs=1e-4)
        assert float(values["lambdaN"]) == pytest.approx(4.6180, abs=1e-4)

    def test_spectrum_prints_clean_zero(self, capsys):
        code, out, _ = call(["spectrum", "cycle:4"], capsys)
        assert code == 0
        assert out == "spectrum=0,2,2,4\n"

    def test_complement_to_stdout(self, capsys):
        code, out, _ = call(["complement", "cycle:4"], capsys)
        assert code == 0
        assert out == "4 2\n0 2\n1 3\n"

    def test_complement_to_file(self, capsys, tmp_path):
        target = tmp_path / "comp.txt"
        code, out, _ = call(["complement", "kbip:2:3", "--out", str(target)], capsys)
        assert code == 0
        assert out == "components=2\n"
        assert target.read_text() == "5 4\n0 1\n2 3\n2 4\n3 4\n"

    def test_metrics_of_petersen(self, capsys):
        code, out, _ = call(["metrics", "petersen"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "betweenness=" + ",".join(["6"] * 10)
        assert lines[1] == f"avg_distance={fmt(15 / 9)}"
        assert lines[2] == "diameter=2"
        assert lines[3] == "degree_variance=0"
        assert lines[4] == "clustering=0"

    def test_edge_list_file_source(self, capsys, tmp_path):
        source = tmp_path / "k23.txt"
        source.write_text("5 6\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n")
        code, out, _ = call(["ratio", str(source)], capsys)
        assert code == 0
        assert out.startswith("r=0.4 ")


class TestTrajectoryCommand:
    def test_csv_on_stdout_summary_on_stderr(self, capsys):
        code, out, err = call(["trajectory", "cycle:6", "--strategy", "random", "--steps", "3", "--seed", "5"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "m_add,r,lambda2,lambdaN"
        assert len(lines) == 5
        assert "net_gain=" in err

    def test_out_writes_csv_and_meta(self, capsys, tmp_path):
        target = tmp_path / "c6.csv"
        code, out, _ = call(["trajectory", "cycle:6", "--out", str(target), "--seed", "1"], capsys)
        assert code == 0
        assert out.startswith("net_gain=")
        assert len(target.read_text().splitlines()) == 11
        assert "strategy=degree_homogeneous" in (tmp_path / "c6.meta").read_text()


class TestVerifyCommand:
    def test_cycle_chords(self, capsys):
        code, out, err = call(["verify", "t1", "--n", "4..8"], capsys)
        assert code == 0
        assert len(out.splitlines()) == 9
        assert all(line.startswith("T1\t") for line in out.splitlines())
        assert "checked=9 failed=0 skipped=0" in err

    def test_monotonicity_on_every_non_edge(self, capsys):
        code, out, _ = call(["verify", "monotonicity", "cycle:5"], capsys)
        assert code == 0
        assert len(out.splitlines()) == 5
        assert "cycle:5 edge=0-2" in out

    def test_single_edge_skipped(self, capsys):
        code, out, err = call(["verify", "l4", "path:4", "--edge", "0,3"], capsys)
        assert code == 0
        assert "\tSKIPPED\t" in out
        assert "skipped=1" in err

    def test_split_complement(self, capsys):
        code, out, _ = call(["verify", "split", "kbip:2:3"], capsys)
        assert code == 0
        assert out.startswith("SPLIT_COMPL\tkbip:2:3\tPASS\t")

    def test_suite(self, capsys):
        code, out, _ = call(["verify", "complement", "--n", "6", "--instances", "5", "--seed", "3"], capsys)
        assert code == 0
        assert len(out.splitlines()) == 5

    def test_attained_bound_exits_one(self, capsys):
        argv = ["verify", "ratio-bound", "--n", "5", "--m", "6", "--samples", "1500", "--seed", "3"]
        code, out, err = call(argv, capsys)
        assert code == 1
        assert "\tFAIL\t" in out
        assert "failed=1" in err

    def test_reports_to_file(self, capsys, tmp_path):
        target = tmp_path / "t1.tsv"
        code, out, _ = call(["verify", "theorem1", "--n", "5", "--out", str(target)], capsys)
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("T1\tN=5 chord=0-2\tPASS\t")

    def test_even_cycle_pair_on_c6(self, capsys):
        code, out, _ = call(["verify", "l6_pair", "cycle:6"], capsys)
        assert code == 0
        assert out.startswith("L6_PAIR\tcycle:6\tPASS\t")

    def test_even_cycle_pair_suite(self, capsys):
        code, out, err = call(["verify", "even-cycle-pair", "--n", "10", "--instances", "6", "--seed", "2"], capsys)
        assert code == 0
        assert len(out.splitlines()) == 6
        assert "failed=0" in err

    def test_betweenness_circulant_example(self, capsys):
        code, out, _ = call(["verify", "betweenness"], capsys)
        assert code == 0
        assert out.startswith("BETWEENNESS\tC10(1,4) vs gamma1\tPASS\t")

    def test_betweenness_of_given_graph(self, capsys):
        code, out, _ = call(["verify", "gamma2", "star:5"], capsys)
        assert code == 0
        assert "\tSKIPPED\t" in out

    def test_unknown_check(self, capsys):
        code, _, err = call(["verify", "l3"], capsys)
        assert code == 2
        assert err.startswith("error: unknown check 'l3'")


class TestSearchCommands:
    def test_scan_four_nodes(self, capsys, tmp_path):
        target = tmp_path / "best4.csv"
        code, out, _ = call(["scan", "--n", "4", "--out", str(target)], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("m=3 max_r=0.25 ")
        assert "m=4->5 max_r=0.5 next_max_r=0.5 equal" in lines
        assert lines[-1] == "nonmonotone=none"
        assert target.exists()

    def test_scan_refuses_large_n(self, capsys):
        code, _, err = call(["scan", "--n", "9"], capsys)
        assert code == 2
        assert err.startswith("error: exhaustive scan limited")

    def test_anneal(self, capsys, tmp_path):
        target = tmp_path / "best.txt"
        argv = ["anneal", "--n", "4", "--m", "3", "--iterations", "300", "--restarts", "2", "--seed", "1"]
        code, out, _ = call([*argv, "--out", str(target)], capsys)
        assert code == 0
        assert out.startswith("best_r=0.25 evaluations=602 ")
        assert target.read_text().startswith("4 3\n")


class TestErrors:
    def test_disconnected_graph(self, capsys, tmp_path):
        source = tmp_path / "two.txt"
        source.write_text("4 2\n0 1\n2 3\n")
        code, out, err = call(["ratio", str(source)], capsys)
        assert code == 2
        assert out == ""
        assert err.startswith("error: ")
        assert len(err.splitlines()) == 1

    def test_edge_list_not_utf8(self, capsys, tmp_path):
        source = tmp_path / "latin.txt"
        source.write_bytes(b"3 2\n0 1\n1 \xff2\n")
        code, out, err = call(["ratio", str(source)], capsys)
        assert code == 2
        assert out == ""
        assert err == "error: line 3: invalid UTF-8 byte 0xff\n"

    @pytest.mark.parametrize("flag,value", [("--restarts", "0"), ("--cooling", "0"), ("--t0", "0")])
    def test_anneal_rejects_zero_schedule_values(self, capsys, flag, value):
        argv = ["anneal", "--n", "4", "--m", "3", "--iterations", "10", flag, value]
        code, out, err = call(argv, capsys)
        assert code == 2
        assert out == ""
        assert err.startswith("error: ")

    def test_bad_generator(self, capsys):
        code, _, err = call(["ratio", "cycle:2"], capsys)
        assert code == 2
        assert err.startswith("error: ")

    def test_bad_edge_flag(self, capsys):
        code, _, err = call(["ratio", "cycle:6", "--add-edge", "0-2"], capsys)
        assert code == 2
        assert "expected 'u,v'" in err

    def test_existing_edge(self, capsys):
        code, _, _ = call(["ratio", "cycle:6", "--add-edge", "0,1"], capsys)
        assert code == 2

    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main([])
        assert exc_info.value.code == 2
        assert len(capsys.readouterr().err.strip().splitlines()) == 1

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, err = call(["complement", "cycle:4", "--out", str(tmp_path / "no" / "file.txt")], capsys)
        assert code == 2
        assert "I/O failure" in err


def test_run_in_process_with_streams():
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run(CommandInvocation(subcommand=Subcommand.RATIO, graph_source="petersen"), stdout, stderr)
    assert code == 0
    assert stdout.getvalue() == "r=0.4 lambda2=2 lambdaN=5\n"
    assert stderr.getvalue() == ""


@pytest.mark.parametrize("text,expected", [("7", (7, 7)), ("4..40", (4, 40))])
def test_parse_range(text, expected):
    assert parse_range(text) == expected
