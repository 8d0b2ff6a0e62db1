"""Expression grammar and JSON codecs: round trips and rejection paths."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stagger.grmod import F, T, V, gm, present, MonoMatrix
from stagger.derived import FormalObject, formal, free_embed
from stagger.formats import (
    ParseError,
    complex_from_json,
    complex_to_json,
    formal_from_json,
    formal_to_expr,
    formal_to_json,
    matrix_from_json,
    matrix_to_json,
    module_to_expr,
    parse_formal,
    parse_module,
    presentation_from_json,
    presentation_to_json,
)


# ---------------------------------------------------------------------------
# expression grammar
# ---------------------------------------------------------------------------


def test_parse_module_basics():
    assert parse_module("F(2) + T(0,3)") == gm([2], [(0, 3)])
    assert parse_module("V(1)") == V(1)
    assert parse_module("0") == gm([])
    assert parse_module("  F(-1)+F(-1) ") == gm([-1, -1])


def test_parse_formal():
    Fo = parse_formal("[0] F(1); [2] T(0,1) + V(3)")
    assert Fo == FormalObject({0: F(1), 2: gm([], [(0, 1), (3, 1)])})
    assert parse_formal("F(0)", default_degree=1) == formal(F(0), 1)
    assert parse_formal("0").is_zero


@pytest.mark.parametrize(
    "text,pos",
    [
        ("F(2) +", 7),
        ("F(x)", 3),
        ("T(1)", 4),
        ("G(1)", 1),
        ("F(1) T(0,1)", 6),
        ("T(0,0)", 1),
    ],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as ei:
        parse_module(text)
    assert ei.value.pos == pos


def test_parse_formal_duplicate_degree_rejected():
    with pytest.raises(ParseError):
        parse_formal("[0] F(1); [0] F(2)")


modules = st.builds(
    gm,
    st.lists(st.integers(-9, 9), max_size=4),
    st.lists(
        st.tuples(st.integers(-9, 9), st.integers(1, 5)), max_size=4
    ),
)


@settings(max_examples=150, deadline=None)
@given(modules)
def test_expr_round_trip(M):
    assert parse_module(module_to_expr(M)) == M


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.integers(-3, 3), modules, max_size=3))
def test_formal_expr_round_trip(comps):
    Fo = FormalObject({k: m for k, m in comps.items() if not m.is_zero})
    assert parse_formal(formal_to_expr(Fo)) == Fo


# ---------------------------------------------------------------------------
# JSON codecs
# ---------------------------------------------------------------------------


def test_presentation_round_trip():
    from stagger.grmod import canonical_decompose

    M = gm([2, -1], [(0, 2), (3, 1)])
    p = present(M)
    q = presentation_from_json(presentation_to_json(p))
    assert q.gens == p.gens
    assert presentation_to_json(q) == presentation_to_json(p)
    assert canonical_decompose(q) == M


def test_matrix_round_trip():
    p = present(gm([1], [(0, 2)]))
    m = p.rel
    m2 = matrix_from_json(matrix_to_json(m))
    assert matrix_to_json(m2) == matrix_to_json(m)


def test_formal_json_round_trip():
    Fo = FormalObject({-1: T(2, 2), 0: gm([0, 3])})
    assert formal_from_json(formal_to_json(Fo)) == Fo


def test_complex_json_round_trip():
    c = free_embed(FormalObject({0: gm([1], [(0, 2)]), 1: F(-1)}))
    c2 = complex_from_json(complex_to_json(c))
    assert c2.validate() == []
    assert complex_to_json(c2) == complex_to_json(c)


def test_matrix_rejects_exponent_mismatch():
    # with explicit column weights the exponent of every entry is forced,
    # and a stated k that disagrees is rejected
    js = {
        "row_weights": [0],
        "col_weights": [-2],
        "entries": [[{"c": "1", "k": 3}]],
    }
    with pytest.raises(ValueError) as ei:
        matrix_from_json(js)
    assert "exponent" in str(ei.value)


def test_presentation_rejects_inhomogeneous_column():
    js = {
        "generators": [0, 3],
        "relations": [[{"c": "1", "k": 2}], [{"c": "1", "k": 2}]],
    }
    with pytest.raises(ValueError) as ei:
        presentation_from_json(js)
    assert "inhomogeneous" in str(ei.value)


def test_presentation_rejects_empty_column():
    js = {"generators": [0], "relations": [[None]]}
    with pytest.raises(ValueError) as ei:
        presentation_from_json(js)
    assert "no entries" in str(ei.value)


def test_matrix_rejects_entry_below_diagonal_weights():
    # an entry requires row weight >= column weight (monomial exponents >= 0)
    js = {
        "row_weights": [0],
        "col_weights": [1],
        "entries": [[{"c": "1", "k": -1}]],
    }
    with pytest.raises(ValueError):
        matrix_from_json(js)
