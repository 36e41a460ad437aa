import random

import pytest

from pfree import catalog_io as cio
from pfree import setcalc
from pfree.group_core import Group, GroupError, build_cyclic, find_isomorphism


class TestGroupExprParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("C6", cio.Cyclic(6)),
            ("c6", cio.Cyclic(6)),
            ("D8", cio.Dihedral(8)),
            ("Q12", cio.Dicyclic(12)),
            ("A4", cio.Alternating(4)),
            ("S4", cio.Symmetric(4)),
            ("M(8,2,5)", cio.Metacyclic(8, 2, 5)),
            ("Mod16", cio.Metacyclic(8, 2, 5)),
            ("C3xQ8", cio.DirectProduct((cio.Cyclic(3), cio.Dicyclic(8)))),
            ("C2 x C2 x C2", cio.DirectProduct((cio.Cyclic(2),) * 3)),
            (" M( 8 , 2 , 5 ) ", cio.Metacyclic(8, 2, 5)),
            ("file:data/k4.tbl", cio.FromFile("data/k4.tbl")),
        ],
    )
    def test_valid(self, text, expected):
        assert cio.parse_group_expr(text) == expected

    @pytest.mark.parametrize(
        "text,message",
        [
            ("D7", "even"),
            ("Q10", "divisible by 4"),
            ("Q4", "divisible by 4"),
            ("A6", "degree"),
            ("M(5,2,2)", "constraint"),
            ("C", "integer"),
            ("Z5", "unexpected"),
            ("C3 y C4", "expected 'x'"),
            ("", "expected group atom"),
        ],
    )
    def test_errors_carry_position_or_reason(self, text, message):
        with pytest.raises(cio.ParseError, match=message):
            cio.parse_group_expr(text)

    @pytest.mark.parametrize(
        "text",
        ["C6", "D8", "Q16", "A4", "S3", "M(8,2,5)", "C3xQ8", "C2xC2xC5", "file:a.tbl"],
    )
    def test_roundtrip(self, text):
        expr = cio.parse_group_expr(text)
        assert cio.parse_group_expr(cio.format_group_expr(expr)) == expr


class TestElementWords:
    def test_power(self):
        c12 = cio.build_group("C12")
        assert cio.parse_element_word(c12, "g^10") == 10

    def test_product(self):
        d8 = cio.build_group("D8")
        gh = cio.parse_element_word(d8, "g*h")
        assert d8.element_names[gh] == "g*h"

    def test_identity_literal(self):
        assert cio.parse_element_word(cio.build_group("Q8"), "1") == 0

    def test_negative_exponent(self):
        c8 = cio.build_group("C8")
        assert cio.parse_element_word(c8, "g^-1") == 7

    def test_raw_index(self):
        c8 = cio.build_group("C8")
        assert cio.parse_element_word(c8, "#5") == 5

    def test_unknown_generator(self):
        with pytest.raises(cio.ParseError, match="unknown generator"):
            cio.parse_element_word(cio.build_group("C8"), "z^2")

    def test_malformed(self):
        with pytest.raises(cio.ParseError, match="malformed"):
            cio.parse_element_word(cio.build_group("C8"), "g^^2")


class TestCayleyFiles:
    def test_roundtrip(self, tmp_path):
        g = build_cyclic(6)
        path = tmp_path / "c6.tbl"
        cio.save_cayley_file(g, path)
        loaded = cio.load_cayley_file(path)
        assert loaded.order == 6
        assert loaded._rows == g._rows
        assert loaded.element_names == g.element_names
        assert find_isomorphism(loaded, g) is not None

    def test_klein_four_handwritten(self, tmp_path):
        path = tmp_path / "k4.tbl"
        path.write_text(
            "# Klein four-group\n"
            "cayley 1 4\n"
            "0 1 2 3\n"
            "1 0 3 2\n"
            "2 3 0 1\n"
            "3 2 1 0\n"
        )
        g = cio.load_cayley_file(path)
        from pfree.group_core import ElementSet

        roots = setcalc.sqrt_set(g, ElementSet.of(g, {0}))
        assert len(roots) == 4

    def test_identity_violation_message(self, tmp_path):
        path = tmp_path / "bad.tbl"
        path.write_text("cayley 1 2\n1 0\n0 1\n")
        with pytest.raises(GroupError, match="identity law violated at row 0"):
            cio.load_cayley_file(path)

    def test_malformed_header(self, tmp_path):
        path = tmp_path / "bad.tbl"
        path.write_text("caley 1 2\n0 1\n1 0\n")
        with pytest.raises(GroupError, match="malformed header"):
            cio.load_cayley_file(path)

    def test_single_entry_mutations_rejected(self, tmp_path):
        # flipping one entry of a valid table must break a group axiom
        g = cio.build_group("D6")
        rng = random.Random(7)
        for _ in range(40):
            table = [row[:] for row in g._rows]
            i, j = rng.randrange(6), rng.randrange(6)
            old = table[i][j]
            new = rng.choice([v for v in range(6) if v != old])
            table[i][j] = new
            with pytest.raises(GroupError):
                Group(table)

    def test_expression_file_atom(self, tmp_path):
        g = build_cyclic(4)
        path = tmp_path / "c4.tbl"
        cio.save_cayley_file(g, path)
        loaded = cio.build_group(f"file:{path}")
        assert find_isomorphism(loaded, g) is not None


class TestBuiltinTable1:
    def test_c6_entry(self):
        entry = next(e for e in cio.builtin_table1().entries if e.expr == "C6")
        assert entry.reference_sets == (("g", "g^3", "g^5"),)
        assert entry.expected_count == 1

    def test_q24_two_classes_total_5(self):
        entry = next(e for e in cio.builtin_table1().entries if e.expr == "Q24")
        assert len(entry.reference_sets) == 2
        assert entry.expected_count == 5
        assert entry.closure_labels == ("C6", "C12")

    def test_total_counts(self):
        total = sum(e.expected_count for e in cio.builtin_table1().entries)
        assert total == 198

    def test_all_reference_words_parse_product_free(self, table1_groups):
        for entry in cio.builtin_table1().entries:
            g = table1_groups[entry.expr]
            for words in entry.reference_sets:
                s = cio.parse_element_set(g, words)
                assert len(s) == 3
                assert setcalc.is_product_free(g, s)


class TestReports:
    def _report(self):
        rec = cio.GroupRecord(
            label="C6", order=6, count=1, orbit_count=1,
            sets=[{"indices": [1, 3, 5], "words": ["g", "g^3", "g^5"]}],
            audit_ok=True,
        )
        return cio.ScanReport(
            version=cio.TOOL_VERSION, k=3, records=[rec], main_theorem_ok=True
        )

    def test_json_roundtrip(self):
        r = self._report()
        assert cio.report_from_json(cio.report_to_json(r)) == r

    def test_empty_report_valid_json(self):
        r = cio.ScanReport(version=cio.TOOL_VERSION, k=3, records=[])
        text = cio.report_to_json(r)
        assert cio.report_from_json(text).records == []

    def test_tsv_columns(self):
        lines = cio.report_to_tsv(self._report()).splitlines()
        assert lines[0].split("\t") == ["group", "order", "count", "orbit_count", "audit_ok"]
        assert lines[1].split("\t") == ["C6", "6", "1", "1", "true"]

    def test_write_and_read(self, tmp_path):
        r = self._report()
        path = tmp_path / "r.json"
        cio.write_report(r, "json", path)
        assert cio.read_report(path) == r
        cio.write_report(r, "tsv", tmp_path / "r.tsv")

    def test_byte_stable(self):
        assert cio.report_to_json(self._report()) == cio.report_to_json(self._report())


class TestBuiltinCoverage:
    def test_abelian_exprs_counts(self):
        # number of abelian groups per order = product of partition counts
        assert len(cio.abelian_exprs(25)) == 2
        assert len(cio.abelian_exprs(27)) == 3
        assert len(cio.abelian_exprs(32)) == 7
        assert len(cio.abelian_exprs(36)) == 4
        assert len(cio.abelian_exprs(30)) == 1

    def test_recognize_group(self):
        import pfree.group_core as gc

        assert cio.recognize_group(gc.build_dicyclic(3)) == "Q12"
        assert cio.recognize_group(gc.build_cyclic(7)) == "C7"
