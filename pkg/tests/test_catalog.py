from fractions import Fraction as F

import pytest

from hombol.catalog import (
    build,
    cross_check,
    describe,
    entries,
    get,
    get_twisted,
    names,
)
from hombol.identities import check_suite


def test_catalog_names():
    assert names() == ("A1", "A2", "A3", "HB_A2", "HB_A3")
    assert [e.name for e in entries()] == list(names())


def test_describe_mentions_the_morphism_structure():
    assert describe("A1").startswith("rigid type")
    assert "lambda" in describe("A2") or "families" in describe("A2")


def test_entry_parameter_metadata():
    by_name = {e.name: e for e in entries()}
    assert by_name["A1"].parameters == ()
    assert by_name["A2"].parameters == ("lambda",)
    assert by_name["A3"].required == ("sign",)


def test_untwisted_entries_satisfy_bol():
    assert check_suite(get("A1"), "bol").passed
    assert check_suite(get("A2"), "bol").passed  # for every lambda
    assert check_suite(get("A3", sign="+"), "bol").passed
    assert check_suite(get("A3", sign="-"), "bol").passed


def test_a1_structure_constants():
    a1 = get("A1")
    import hombol.algebra as alg

    e1, e2 = alg.Vector.basis(0, 2), alg.Vector.basis(1, 2)
    assert a1.eval_binary(e1, e2) == alg.Vector((0, -1))
    assert a1.eval_ternary(e1, e2, e1) == alg.Vector((1, 0))
    assert a1.eval_ternary(e1, e2, e2) == alg.Vector((0, -1))
    assert a1.twist.is_identity()


def test_twisted_entry_with_trivial_parameters_is_the_base():
    assert get_twisted("HB_A2", a=F(0), b=F(1)) == get("A2")


def test_twisted_a2_satisfies_hom_bol_symbolically():
    assert check_suite(get_twisted("HB_A2"), "hom_bol").passed


def test_twisted_a3_fails_only_ternary_compatibility():
    report = check_suite(get_twisted("HB_A3", sign="+"), "hom_bol")
    verdicts = dict(report.results)
    failing = {name for name, ce in verdicts.items() if ce is not None}
    assert failing == {"twist_respects_ternary"}
    ce = verdicts["twist_respects_ternary"]
    assert ce.indices == (0, 1, 1)
    assert str(ce.residual) == "(-b^2 + 1, 0)"  # vanishes only when b^2 = 1


def test_entry_name_errors():
    with pytest.raises(ValueError, match="needs sign"):
        get("A3")
    with pytest.raises(ValueError, match="unknown catalog name"):
        get("BOGUS")
    with pytest.raises(ValueError, match="unknown catalog name"):
        get_twisted("A1")
    with pytest.raises(ValueError, match="unknown catalog name"):
        cross_check("BOGUS", 1)


def test_build_dispatches_by_name():
    assert build("A1") == get("A1")
    assert build("A3", lam=F(2), sign="-") == get("A3", lam=F(2), sign="-")
    assert build("HB_A2", a=F(1), b=F(2)) == get_twisted("HB_A2", a=F(1), b=F(2))


# --- cross-check reports ------------------------------------------------------


def test_cross_check_order_zero_carries_base_and_derived_rows():
    report = cross_check("HB_A2", 0)
    assert len(report.rows) == 10
    assert len(report.mismatches) == 3
    text = report.format()
    assert text.splitlines()[0] == "cross-check HB_A2, derived order 0"
    assert (
        "  ternary e1 e2 e1 [quoted base form]: quoted b*lambda*e2 "
        "| constructed b^2*lambda*e2 -> MISMATCH" in text
    )
    assert (
        "  binary e1 e2 [quoted base form]: quoted -b*e2 "
        "| constructed -b*e2 -> match" in text
    )
    assert text.splitlines()[-1] == "  => 3 mismatch(es) in 10 row(s)"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cross_check_derived_orders_flag_one_power_of_b(n):
    report = cross_check("HB_A2", n)
    assert len(report.rows) == 5
    mismatched = {row.label for row in report.mismatches}
    assert mismatched == {"binary e1 e2", "ternary e1 e2 e1"}
    # the twist rows, geometric sum included, agree exactly
    matching = {row.label for row in report.rows if row.match}
    assert {"alpha e1", "alpha e2"} <= matching


def test_cross_check_first_derived_text():
    text = cross_check("HB_A2", 1).format()
    assert (
        "  binary e1 e2 [quoted derived form, order 1]: quoted -b*e2 "
        "| constructed -b^2*e2 -> MISMATCH" in text
    )
    assert (
        "  alpha e1 [quoted derived form, order 1]: quoted e1 + a*b*e2 + a*e2 "
        "| constructed e1 + a*b*e2 + a*e2 -> match" in text
    )


def test_cross_check_a3_also_flags_the_sign():
    report = cross_check("HB_A3", 2, sign="+")
    assert len(report.rows) == 5
    assert {row.label for row in report.mismatches} == {
        "binary e1 e2",
        "ternary e1 e2 e1",
        "ternary e1 e2 e2",
    }
    assert (
        "  ternary e1 e2 e2 [quoted derived form, order 2]: quoted -e1 "
        "| constructed e1 -> MISMATCH" in report.format()
    )


def test_cross_check_untwisted_entries_are_clean():
    for name in ("A1", "A2"):
        for n in (0, 1, 3):
            assert cross_check(name, n).mismatches == ()


def test_cross_check_binds_numeric_parameters():
    report = cross_check("HB_A2", 1, lam=F(1), a=F(0), b=F(2))
    labels = {row.label: row for row in report.rows}
    assert not labels["binary e1 e2"].match  # -2 vs -4
    assert labels["alpha e2"].match
