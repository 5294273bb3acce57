"""
Tests for the euler-mod4 command line
"""

import json

import pytest

from euler_mod4.cli import EXIT_INTERNAL, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, build_parser, run
from euler_mod4.config import THREADS_ENV_VAR
from euler_mod4.families import GtsParams, complete_graph, cycle_graph, gts
from euler_mod4.graceful import gts_labeling, serialize_labeling
from euler_mod4.graph_core import parse_graph


@pytest.fixture
def cli(tmp_path, capsys, monkeypatch):
    """Run the CLI against an empty settings file; returns (status, parsed JSON)."""
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
    settings = tmp_path / "no-settings.json"

    def invoke(*argv):
        status = run(["--settings", str(settings), *argv, "--json"])
        return status, json.loads(capsys.readouterr().out)

    return invoke


class TestClassify:
    """Tests for the classify command."""

    def test_k5(self, cli, graph_file, k5):
        status, report = cli("classify", str(graph_file(k5)))

        assert status == EXIT_OK
        assert report["exit_status"] == EXIT_OK
        assert report["result"]["class"] == "ε₀₁₃"
        assert report["result"]["kind"] == "T3"
        assert report["result"]["profile"]["residues"] == [0, 1, 3]

    def test_cycle(self, cli, graph_file, c6):
        status, report = cli("classify", str(graph_file(c6)))
        assert status == EXIT_OK
        assert report["result"]["class_ascii"] == "eps2"

    def test_not_eulerian(self, cli, graph_file, k4):
        status, report = cli("classify", str(graph_file(k4)))
        assert status == EXIT_NEGATIVE
        assert report["result"]["eulerian"] is False
        assert report["result"]["class"] is None

    def test_disconnected(self, cli, tmp_path):
        path = tmp_path / "two.txt"
        path.write_text("6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n", encoding="utf-8")
        status, report = cli("classify", str(path))
        assert status == EXIT_NEGATIVE
        assert report["result"]["connected"] is False

    def test_malformed(self, cli, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n0 1\n", encoding="utf-8")
        status, report = cli("classify", str(path))
        assert status == EXIT_USAGE
        assert report["error"]

    def test_not_utf8(self, cli, tmp_path):
        path = tmp_path / "binary.txt"
        path.write_bytes(b"3 3\n0 1\n1 2\n2 \xff0\n")
        status, report = cli("classify", str(path))
        assert status == EXIT_USAGE
        assert "not UTF-8" in report["error"]

    def test_missing_file(self, cli, tmp_path):
        status, _ = cli("classify", str(tmp_path / "nowhere.txt"))
        assert status == EXIT_USAGE

    def test_workers(self, cli, graph_file, k5):
        status, report = cli("--workers", "2", "classify", str(graph_file(k5)))
        assert status == EXIT_OK
        assert report["result"]["profile"]["counts"] == {"0": 15, "1": 12, "2": 0, "3": 10}

    def test_truncated(self, cli, graph_file, k5):
        status, report = cli("classify", str(graph_file(k5)), "--cap", "5")
        assert status == EXIT_INTERNAL
        assert report["result"]["profile"]["truncated"] is True


class TestGenerate:
    """Tests for generate and families."""

    def test_gts_to_file(self, cli, tmp_path):
        out = tmp_path / "g43.txt"
        layout = tmp_path / "g43.json"
        status, report = cli(
            "generate", "gts", "--t", "4", "--s", "3", "--out", str(out), "--layout", str(layout)
        )

        assert status == EXIT_OK
        assert (report["result"]["p"], report["result"]["q"]) == (32, 48)
        assert parse_graph(out.read_text(encoding="utf-8")) == gts(GtsParams(4, 3)).graph
        assert json.loads(layout.read_text(encoding="utf-8"))["rows"] == 8

    def test_edge_list_inline(self, cli):
        status, report = cli("generate", "cycle", "--n", "5", "--classify")
        assert status == EXIT_OK
        assert report["result"]["edge_list"].startswith("5 5\n")
        assert report["result"]["profile"]["residues"] == [1]

    def test_handle(self, cli, graph_file):
        host = graph_file(cycle_graph(16), "c16.txt")
        status, report = cli(
            "generate", "handle", "--in", str(host), "--u", "0", "--v", "4", "--len", "4", "--count", "2",
            "--classify",
        )
        assert status == EXIT_OK
        assert (report["result"]["p"], report["result"]["q"]) == (22, 24)
        assert report["result"]["profile"]["residues"] == [0]

    def test_missing_parameter(self, cli):
        status, report = cli("generate", "cycle")
        assert status == EXIT_USAGE
        assert "--n" in report["error"]

    def test_invalid_parameter(self, cli):
        status, _ = cli("generate", "gts", "--t", "0", "--s", "2")
        assert status == EXIT_USAGE

    def test_scale_guard(self, cli):
        status, _ = cli("generate", "hypercube", "--n", "11")
        assert status == EXIT_INTERNAL

    def test_random_is_seeded(self, cli):
        _, first = cli("--seed", "5", "generate", "random", "--n", "8", "--p", "0.5")
        _, second = cli("--seed", "5", "generate", "random", "--n", "8", "--p", "0.5")
        assert first["result"]["edge_list"] == second["result"]["edge_list"]

    def test_families(self, cli):
        status, report = cli("families")
        assert status == EXIT_OK
        assert "gts" in report["result"]["families"]


class TestGraceful:
    """Tests for label, verify-graceful and search-graceful."""

    def test_label_check(self, cli, tmp_path):
        out = tmp_path / "labels.json"
        status, report = cli("label", "gts", "--t", "4", "--s", "3", "--check", "--serial", "--out", str(out))

        assert status == EXIT_OK
        assert report["result"]["check"]["valid"] is True
        assert report["result"]["labeling"]["q"] == 48
        assert sorted(report["result"]["serial_order"].values()) == list(range(1, 33))
        assert json.loads(out.read_text(encoding="utf-8"))["q"] == 48

    def test_verify_valid(self, cli, graph_file, tmp_path):
        params = GtsParams(2, 2)
        labels = tmp_path / "labels.json"
        labels.write_text(serialize_labeling(gts_labeling(params)), encoding="utf-8")

        status, report = cli("verify-graceful", str(graph_file(gts(params).graph)), str(labels))
        assert status == EXIT_OK
        assert report["result"]["valid"] is True

    def test_verify_tampered(self, cli, graph_file, tmp_path):
        labels = tmp_path / "labels.json"
        labels.write_text('{"labels": {"0": 0, "1": 4, "2": 1, "3": 1}, "q": 4}', encoding="utf-8")

        status, report = cli("verify-graceful", str(graph_file(cycle_graph(4))), str(labels))
        assert status == EXIT_NEGATIVE
        assert report["result"]["violations"]

    def test_verify_wrong_nodes(self, cli, graph_file, tmp_path):
        labels = tmp_path / "labels.json"
        labels.write_text('{"labels": {"0": 0, "1": 4}, "q": 4}', encoding="utf-8")

        status, _ = cli("verify-graceful", str(graph_file(cycle_graph(4))), str(labels))
        assert status == EXIT_USAGE

    def test_search_absence(self, cli, graph_file):
        status, report = cli("search-graceful", str(graph_file(cycle_graph(5))))
        assert status == EXIT_NEGATIVE
        assert report["result"]["status"] == "absence"

    def test_search_found(self, cli, graph_file):
        status, report = cli("search-graceful", str(graph_file(cycle_graph(4))))
        assert status == EXIT_OK
        assert report["result"]["labeling"]["q"] == 4

    def test_search_inconclusive(self, cli, graph_file):
        status, report = cli("search-graceful", str(graph_file(complete_graph(4))), "--budget", "2")
        assert status == EXIT_INTERNAL
        assert report["result"]["status"] == "inconclusive"


class TestSearchAndCheck:
    """Tests for search-regular, check, rules and export-dot."""

    def test_search_regular(self, cli, tmp_path):
        out_dir = tmp_path / "graphs"
        status, report = cli("search-regular", "--order", "7", "--degree", "4", "--out-dir", str(out_dir))

        assert status == EXIT_OK
        assert report["result"]["count"] == 2
        assert len(list(out_dir.glob("n7_k4_*.txt"))) == 2

    def test_search_regular_parity(self, cli):
        status, _ = cli("search-regular", "--order", "7", "--degree", "3")
        assert status == EXIT_USAGE

    def test_check_conjecture(self, cli):
        status, report = cli("check", "--theorem", "conjecture", "--max", "8")

        assert status == EXIT_OK
        assert report["result"]["verdict"] == "consistent with paper"
        assert report["result"]["counterexamples"] == []
        assert report["result"]["n_min"] == 6

    def test_check_pure(self, cli):
        status, report = cli("check", "--theorem", "pure", "--max", "6")
        assert status == EXIT_OK
        assert report["result"]["premise_matches"] == 4

    def test_check_guard(self, cli):
        status, _ = cli("check", "--theorem", "pure", "--max", "12")
        assert status == EXIT_INTERNAL

    def test_check_evenness(self, cli):
        status, report = cli("check", "--theorem", "evenness", "--max", "5", "--samples", "5")
        assert status == EXIT_OK
        assert report["result"]["anchors"]["random_graphs"] == 5

    def test_rules_verify(self, cli):
        status, report = cli("rules", "--verify")
        assert status == EXIT_OK
        assert report["result"]["rows_printed"] == 46
        assert report["result"]["all_passed"] is True

    def test_rules_listing(self, cli):
        status, report = cli("rules")
        assert status == EXIT_OK
        assert len(report["result"]["tables"]) == 11

    def test_export_dot(self, cli, graph_file, tmp_path):
        labels = tmp_path / "labels.json"
        labels.write_text('{"labels": {"0": 0, "1": 1, "2": 3}, "q": 3}', encoding="utf-8")

        status, report = cli("export-dot", str(graph_file(cycle_graph(3))), "--labeling", str(labels))
        assert status == EXIT_OK
        assert '  1 -- 2 [label="2"];' in report["result"]["dot"]


def test_text_output(tmp_path, capsys, graph_file, k5, monkeypatch):
    """Without --json the report is printed as key: value lines."""
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
    status = run(["--settings", str(tmp_path / "none.json"), "classify", str(graph_file(k5))])

    assert status == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("classify: exit 0")
    assert "class: ε₀₁₃" in out


def test_invalid_workers(cli):
    status, _ = cli("--workers", "0", "families")
    assert status == EXIT_USAGE


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as excinfo:
        build_parser().parse_args(["frobnicate"])
    assert excinfo.value.code == 2


def test_single_letter_options_after_subcommand():
    """--s and --t belong to the subcommand, never to --settings or --seed."""
    args = build_parser().parse_args(["generate", "gts", "--t", "4", "--s", "3"])

    assert (args.t, args.s) == (4, 3)
    assert args.settings is None
    assert args.seed is None


def test_long_options_are_not_abbreviated():
    with pytest.raises(SystemExit) as excinfo:
        build_parser().parse_args(["--set", "x.json", "families"])
    assert excinfo.value.code == 2
