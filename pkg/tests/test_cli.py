import json

import pytest

from pfree import catalog_io as cio
from pfree.cli import main
from pfree.group_core import build_cyclic


class TestAnalyze:
    def test_c6_lmpf_set(self, capsys):
        assert main(["analyze", "--group", "C6", "--set", "g,g^3,g^5"]) == 0
        out = capsys.readouterr().out
        assert "product-free: True" in out
        assert "locally maximal (coverage test): True" in out
        assert "locally maximal (extension test): True" in out
        assert "isomorphic to C6" in out
        assert "audit all passed: True" in out

    def test_c8_singleton_not_maximal(self, capsys):
        assert main(["analyze", "--group", "C8", "--set", "g"]) == 0
        out = capsys.readouterr().out
        assert "locally maximal (coverage test): False" in out

    def test_identity_not_product_free(self, capsys):
        assert main(["analyze", "--group", "C6", "--set", "1,g"]) == 0
        assert "product-free: False" in capsys.readouterr().out

    def test_parse_failure_exits_2(self, capsys):
        assert main(["analyze", "--group", "D7", "--set", "g"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_word_group_mismatch_exits_2(self, capsys):
        assert main(["analyze", "--group", "C6", "--set", "x"]) == 2


class TestEnumerate:
    def test_a4_count(self, capsys):
        assert main(["enumerate", "--group", "A4", "--k", "3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["records"][0]["count"] == 48

    def test_c9_orbits(self, capsys):
        assert main(["enumerate", "--group", "C9", "--k", "3", "--up-to-aut"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["records"][0]["orbit_count"] == 2

    def test_trivial_group(self, capsys):
        assert main(["enumerate", "--group", "C1", "--k", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["records"][0]["count"] == 0

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "c12.json"
        code = main(
            ["enumerate", "--group", "C12", "--k", "3", "--audit", "--out", str(out)]
        )
        assert code == 0
        report = cio.read_report(out)
        assert report.records[0].count == 9
        assert report.records[0].audit_ok is True

    def test_bad_k_exits_2(self):
        assert main(["enumerate", "--group", "C6", "--k", "0"]) == 2


class TestVerifyTable1:
    def test_passes(self, capsys):
        assert main(["verify-table1", "--threads", "1"]) == 0
        out = capsys.readouterr().out
        assert "largest group with LMPF size-3 set: 24" in out
        assert "all rows verified" in out
        assert out.count("✓") == 20


class TestScan:
    def test_order_6(self, capsys):
        assert main(["scan", "--orders", "6..6", "--k", "3", "--threads", "1"]) == 0
        out = capsys.readouterr().out
        assert "C6\t6\t1" in out
        assert "D6\t6\t1" in out

    def test_with_catalog(self, tmp_path, capsys):
        cio.save_cayley_file(build_cyclic(26), tmp_path / "c26.tbl")
        code = main(
            [
                "scan", "--orders", "26..26", "--k", "3",
                "--catalog", str(tmp_path), "--threads", "1",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "total LMPF sets of size 3 found: 0" in out

    def test_catalog_load_failure_exits_2(self, tmp_path):
        (tmp_path / "bad.tbl").write_text("not a cayley file\n")
        code = main(
            ["scan", "--orders", "26..26", "--k", "3", "--catalog", str(tmp_path)]
        )
        assert code == 2

    def test_bad_range_exits_2(self):
        assert main(["scan", "--orders", "10..5", "--k", "3"]) == 2


class TestDeterminism:
    def test_identical_reports_across_thread_counts(self, capsys):
        main(["enumerate", "--group", "D12", "--k", "3", "--threads", "1"])
        first = capsys.readouterr().out
        main(["enumerate", "--group", "D12", "--k", "3", "--threads", "4"])
        second = capsys.readouterr().out
        assert first == second
