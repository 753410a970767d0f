from fractions import Fraction as F

import pytest

from hombol.algebra import LinearMap, Vector
from hombol.catalog import build, get, get_twisted, names
from hombol.constructions import malcev_to_bol, nth_derived, self_twist
from hombol.errors import ParseError
from hombol.morphisms import generate_constraints
from hombol.scalars import Scalar
from hombol.serialization import (
    emit_algebra,
    emit_constraints,
    emit_map,
    format_vector,
    parse_algebra,
    parse_constraints,
    parse_map,
)

HB_A2_TEXT = (
    "dim 2\n"
    "params a b lambda\n"
    "basis e1 e2\n"
    "binary e1 e2 = -b*e2\n"
    "binary e2 e1 = b*e2\n"
    "ternary e1 e2 e1 = b^2*lambda*e2\n"
    "ternary e2 e1 e1 = -b^2*lambda*e2\n"
    "alpha e1 = e1 + a*e2\n"
    "alpha e2 = b*e2\n"
)


# --- vectors -----------------------------------------------------------------


def test_format_vector():
    labels = ("e1", "e2")
    assert format_vector(Vector((0, 0)), labels) == "0"
    assert format_vector(Vector((1, -1)), labels) == "e1 - e2"
    assert format_vector(Vector((F(5, 2), 0)), labels) == "5/2*e1"
    assert (
        format_vector(Vector((Scalar.rational(-1, 3), Scalar.parameter("b"))), labels)
        == "-1/3*e1 + b*e2"
    )


# --- algebra documents -------------------------------------------------------


def test_emit_twisted_catalog_entry_exact_text():
    assert emit_algebra(get_twisted("HB_A2")) == HB_A2_TEXT


def test_round_trip_all_catalog_entries():
    for name in names():
        alg = build(name, sign="+") if name in ("A3", "HB_A3") else build(name)
        text = emit_algebra(alg)
        back = parse_algebra(text)
        assert back == alg
        assert back.twist == alg.twist
        assert emit_algebra(back) == text  # byte stable


def test_round_trip_constructed_algebras():
    lie_doc = (
        "dim 3\nbasis e1 e2 e3\ncomplete skew-binary\n"
        "binary e1 e2 = e3\nbinary e2 e3 = e1\nbinary e3 e1 = e2\n"
    )
    samples = [
        nth_derived(get_twisted("HB_A2"), 2),
        self_twist(get_twisted("HB_A2"), get_twisted("HB_A2").twist, 1),
        malcev_to_bol(parse_algebra(lie_doc)),
    ]
    for alg in samples:
        text = emit_algebra(alg)
        assert parse_algebra(text) == alg
        assert emit_algebra(parse_algebra(text)) == text


def test_skew_completion_fills_unstated_cells():
    doc = "dim 2\nbasis e1 e2\ncomplete skew-binary\nbinary e1 e2 = -e2\n"
    alg = parse_algebra(doc)
    e1, e2 = Vector.basis(0, 2), Vector.basis(1, 2)
    assert alg.eval_binary(e2, e1) == Vector((0, 1))
    assert alg.eval_binary(e1, e1).is_zero()


def test_comments_and_blank_lines_ignored():
    doc = "# header comment\n\ndim 2\nbasis e1 e2\n\n# product\nbinary e1 e2 = e1\n"
    assert parse_algebra(doc).eval_binary(
        Vector.basis(0, 2), Vector.basis(1, 2)
    ) == Vector((1, 0))


def test_absent_alpha_stanza_means_identity():
    alg = parse_algebra("dim 2\nbasis e1 e2\nbinary e1 e2 = e1\n")
    assert alg.twist.is_identity()


@pytest.mark.parametrize(
    "doc,message",
    [
        (
            "dim 2\nbasis e1 e2\nbinary e1 e2 = e1\nbinary e1 e2 = e2\n",
            "duplicate assignment for binary e1 e2",
        ),
        (
            "dim 2\nbasis e1 e2\ncomplete skew-binary\nbinary e1 e2 = e1\nbinary e2 e1 = e1\n",
            "breaks skew symmetry",
        ),
        (
            "dim 2\nbasis e1 e2\ncomplete skew-binary\nbinary e1 e1 = e2\n",
            "must vanish under skew completion",
        ),
        ("dim 2\nbasis e1 e2\nbinary e1 e2 = c*e1\n", "undeclared symbol 'c'"),
        ("dim 2\nbasis e1 e2\nbinary e1 e9 = e1\n", "undeclared symbol 'e9'"),
        (
            "dim 2\nbasis e1 e2\nbinary e1 e2 = e1\nalpha e1 = e1\n",
            "alpha image missing for 'e2'",
        ),
        ("basis e1 e2\nbinary e1 e2 = e1\n", "dim must come before basis"),
        ("dim two\nbasis e1 e2\n", "dim takes one positive integer"),
        ("dim 2\nbinary e1 e2 = e1\n", "basis must be declared before assignments"),
        (
            "dim 2\nparams a\nbasis e1 e2\nbinary e1 e2 = e1*e2\n",
            "linear combination of basis vectors",
        ),
        (
            "dim 2\nparams a b\nbasis e1 e2\nbinary e1 e2 = a*b\n",
            "linear combination of basis vectors",
        ),
        ("dim 2\nbasis e1 e2\nfrobnicate e1 = e1\n", "unknown keyword"),
    ],
)
def test_algebra_document_errors(doc, message):
    with pytest.raises(ParseError, match=message):
        parse_algebra(doc)


# --- map documents -----------------------------------------------------------


def test_map_round_trip():
    twist = get_twisted("HB_A2").twist
    text = emit_map(twist, ("e1", "e2"))
    assert text == (
        "dim 2\nparams a b\nbasis e1 e2\nalpha e1 = e1 + a*e2\nalpha e2 = b*e2\n"
    )
    back, basis, params = parse_map(text)
    assert back == twist
    assert basis == ("e1", "e2")
    assert params == frozenset({"a", "b"})
    assert emit_map(back, basis) == text


def test_map_document_rejects_products():
    doc = "dim 2\nbasis e1 e2\nbinary e1 e2 = e1\nalpha e1 = e1\nalpha e2 = e2\n"
    with pytest.raises(ParseError, match="only header and alpha lines"):
        parse_map(doc)


def test_map_document_requires_every_column():
    with pytest.raises(ParseError, match="alpha image missing for 'e2'"):
        parse_map("dim 2\nbasis e1 e2\nalpha e1 = e1\n")


# --- constraint documents ----------------------------------------------------


def test_constraints_round_trip():
    system = generate_constraints(get("A2"))
    text = emit_constraints(system)
    assert text.startswith("unknowns a1 a2 b1 b2\nparams lambda\n")
    back = parse_constraints(text)
    assert back == system
    assert emit_constraints(back) == text


def test_constraint_unknown_count_must_be_square():
    with pytest.raises(ParseError, match="perfect square"):
        parse_constraints("unknowns a1 a2 b1\na1\n")
