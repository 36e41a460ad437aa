import pytest

from pfree import enumerator as en
from pfree import setcalc as sc
from pfree.catalog_io import (
    builtin_table1,
    build_group,
    builtin_exprs_for_order,
    parse_element_set,
    parse_group_expr,
)
from pfree.group_core import ElementSet, GroupError, automorphisms, closure


class TestProductFreeEnumeration:
    def test_c3_singletons(self):
        c3 = build_group("C3")
        sets = en.enumerate_product_free(c3, 1).sets
        assert [s.sorted_tuple() for s in sets] == [(1,), (2,)]

    def test_singletons_are_non_identity(self, small_groups):
        for g in small_groups:
            assert len(en.enumerate_product_free(g, 1).sets) == g.order - 1

    def test_c6_triples(self):
        # brute force over all 20 triples gives exactly one product-free set
        c6 = build_group("C6")
        enum = en.enumerate_product_free(c6, 3)
        assert len(enum.sets) == 1
        assert enum.sets[0].sorted_tuple() == (1, 3, 5)

    def test_k_out_of_range(self):
        c6 = build_group("C6")
        with pytest.raises(GroupError):
            en.enumerate_product_free(c6, 0)
        with pytest.raises(GroupError):
            en.enumerate_product_free(c6, 7)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_backtracking_equals_naive(self, small_groups, k):
        for g in small_groups:
            if g.order < k:
                continue
            fast = en.enumerate_product_free(g, k).sets
            naive = en.enumerate_product_free_naive(g, k).sets
            assert [s.sorted_tuple() for s in fast] == [
                s.sorted_tuple() for s in naive
            ]

    def test_deterministic_under_workers(self):
        g = build_group("M(8,2,5)")
        one = en.enumerate_product_free(g, 3, workers=1).sets
        four = en.enumerate_product_free(g, 3, workers=4).sets
        assert [s.sorted_tuple() for s in one] == [s.sorted_tuple() for s in four]
        lone = en.enumerate_lmpf(g, 3, workers=1).sets
        lfour = en.enumerate_lmpf(g, 3, workers=4).sets
        assert [s.sorted_tuple() for s in lone] == [s.sorted_tuple() for s in lfour]


class TestLmpfEnumeration:
    @pytest.mark.parametrize(
        "expr,count", [("A4", 48), ("D8", 4), ("C12", 9), ("C6", 1), ("Q24", 5)]
    )
    def test_reference_counts(self, expr, count):
        g = build_group(expr)
        assert len(en.enumerate_lmpf(g, 3).sets) == count

    def test_oracles_agree_on_enumeration(self):
        g = build_group("C12")
        lemma = en.enumerate_lmpf(g, 3).sets
        extension = en.enumerate_lmpf(g, 3, use_extension_oracle=True).sets
        assert lemma == extension

    def test_sets_sorted_and_all_lmpf(self):
        g = build_group("D8")
        enum = en.enumerate_lmpf(g, 3)
        tuples = [s.sorted_tuple() for s in enum.sets]
        assert tuples == sorted(tuples)
        assert all(sc.is_locally_maximal(g, s) for s in enum.sets)

    def test_order_bounds_on_all_findings(self, table1_groups):
        # theorem consequences (ii) and (vi) on every enumerated set
        for g in table1_groups.values():
            for s in en.enumerate_lmpf(g, 3).sets:
                cl = closure(g, s)
                assert g.order <= 2 * len(sc.t_set(g, s)) * len(cl)
                if not (s.members & sc.inverse_set(g, s).members):
                    assert g.order <= 4 * len(s) ** 2 + 1


class TestOrbits:
    def test_c9_two_orbits(self):
        c9 = build_group("C9")
        dec = en.orbit_decompose(c9, en.enumerate_lmpf(c9, 3))
        reps = {rep.sorted_tuple(): size for rep, size in dec.orbit_reps}
        assert reps == {(1, 3, 8): 6, (1, 4, 7): 2}

    def test_orbit_sizes_sum(self, table1_groups):
        for g in table1_groups.values():
            enum = en.enumerate_lmpf(g, 3)
            dec = en.orbit_decompose(g, enum)
            assert sum(size for _, size in dec.orbit_reps) == len(enum.sets)

    def test_c6_single_orbit(self):
        c6 = build_group("C6")
        dec = en.orbit_decompose(c6, en.enumerate_lmpf(c6, 3))
        assert len(dec.orbit_reps) == 1
        assert dec.orbit_reps[0][1] == 1

    def test_automorphism_closure_of_findings(self, table1_groups):
        # applying any automorphism to an LMPF set yields an LMPF set
        for g in table1_groups.values():
            found = {s.sorted_tuple() for s in en.enumerate_lmpf(g, 3).sets}
            for phi in automorphisms(g):
                for t in found:
                    assert tuple(sorted(phi[x] for x in t)) in found


class TestReferenceMatching:
    def test_c6_true(self):
        c6 = build_group("C6")
        enum = en.enumerate_lmpf(c6, 3)
        assert en.match_against_reference(c6, enum, [("g", "g^3", "g^5")])

    def test_q16_dicyclic_words(self):
        q16 = build_group("Q16")
        enum = en.enumerate_lmpf(q16, 3)
        assert len(enum.sets) == 2
        assert en.match_against_reference(q16, enum, [("x", "x^4", "x^-1")])

    def test_wrong_reference_false(self):
        c6 = build_group("C6")
        enum = en.enumerate_lmpf(c6, 3)
        assert not en.match_against_reference(c6, enum, [("g", "g^2", "g^3")])

    def test_every_table1_row_matches(self, table1_groups):
        for entry in builtin_table1().entries:
            g = table1_groups[entry.expr]
            enum = en.enumerate_lmpf(g, 3)
            assert en.match_against_reference(g, enum, entry.reference_sets), entry.expr


class TestScan:
    def test_order_6(self):
        report = en.scan([parse_group_expr("C6"), parse_group_expr("D6")], 3)
        counts = {rec.label: rec.count for rec in report.records}
        assert counts == {"C6": 1, "D6": 1}
        assert report.main_theorem_ok is True

    def test_trivial_group(self):
        report = en.scan([parse_group_expr("C1")], 1)
        assert report.records[0].count == 0

    def test_orders_25_to_37_builtins_empty(self):
        exprs = []
        for n in range(25, 38):
            exprs.extend(builtin_exprs_for_order(n))
        report = en.scan(exprs, 3, dedupe=True)
        assert all(rec.count == 0 for rec in report.records)
        assert report.main_theorem_ok is True

    def test_bad_expression_propagates_with_name(self):
        with pytest.raises(GroupError, match="M\\(5,2,2\\)"):
            from pfree.catalog_io import Metacyclic

            en.scan([Metacyclic(5, 2, 2)], 3)

    def test_deterministic_group_order(self):
        exprs = [parse_group_expr(e) for e in ("D8", "C8", "C6")]
        report = en.scan(exprs, 3)
        assert [r.label for r in report.records] == ["C6", "C8", "D8"]


class TestVerifyTable1:
    def test_all_rows_pass(self):
        result = en.verify_table1()
        assert result.ok
        assert result.largest_order_with_set == 24
        assert result.report.table1_match is True
        assert result.report.main_theorem_ok is True

    def test_corrupted_count_detected(self):
        from dataclasses import replace

        from pfree.catalog_io import Table1Reference

        ref = builtin_table1()
        bad = Table1Reference(
            tuple(
                replace(e, expected_count=99) if e.expr == "D8" else e
                for e in ref.entries
            )
        )
        result = en.verify_table1(reference=bad)
        assert not result.ok
        failing = [r.label for r in result.rows if not r.ok]
        assert failing == ["D8"]
