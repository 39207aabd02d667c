from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherext.dsl import parse_cube, parse_group, parse_permutation, parse_subset, serialize_cube, subset_key
from higherext.enumeration import random_cube
from higherext.errors import NonCommutingSquare, ParseError, ShapeMismatch, ValidationError
from higherext.library import library_group
from higherext.structure import is_isomorphic

from util import d4_square, klein_square

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def test_library_names_and_cyclic_groups():
    assert parse_group("Z 4").order == 4
    assert parse_group("z4") == parse_group("Z4")
    assert parse_group("d4") == library_group("D4")
    assert parse_group("s3") == library_group("S3")


def test_permutation_groups():
    G = parse_group("perm 3: (0 1 2), (0 1)")
    assert G.order == 6 and is_isomorphic(G, library_group("S3"))
    assert parse_group("PERM 4: (0 1 2 3), (0 2)").order == 8


def test_cycles_compose_right_to_left():
    # (0 1) first, then (1 2): 0 -> 1 -> 2, 1 -> 0, 2 -> 1
    assert parse_permutation("(1 2)(0 1)", 3) == [2, 0, 1]


def test_products_and_tables():
    G = parse_group("Z2 x S3")
    assert G.order == 12 and len(G.factors) == 2
    assert parse_group("(Z2 x Z2) x Z3").order == 12
    assert parse_group("table: 0 1; 1 0") == library_group("Z2")


@pytest.mark.parametrize("text, line, column", [
    ("(0 1", 1, 1),
    ("Z2 x Q9", 1, 6),
    ("perm 3: (0 3)", 1, 9),
    ("table: 0 1; 1", 1, 7),
])
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_group(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_subset_keys():
    assert parse_subset("{0,1}", 2) == 3 and parse_subset("{}", 2) == 0
    assert subset_key(0b101) == "{0,2}"
    with pytest.raises(ValidationError):
        parse_subset("{2}", 2)


def test_sample_documents():
    assert parse_cube((SAMPLES / "d4-square.json").read_text()) == d4_square()
    assert parse_cube((SAMPLES / "klein-square.json").read_text()) == klein_square()
    S3 = parse_cube((SAMPLES / "identity-square.json").read_text())
    assert all(v.order == 6 for v in S3.vertices)
    diagonal = parse_cube((SAMPLES / "diagonal-square.json").read_text())
    assert diagonal.top.order == 2 and diagonal.vertex(0).order == 1


def test_non_commuting_square_names_the_face():
    doc = json.loads((SAMPLES / "diagonal-square.json").read_text())
    doc["vertices"]["{}"] = "Z2"
    doc["arrows"]["{1}->{}"] = {"map": [0, 1]}
    doc["arrows"]["{0}->{}"] = {"map": [0, 0]}
    with pytest.raises(NonCommutingSquare, match=r"\{0, 1\}"):
        parse_cube(doc)


def test_document_errors():
    with pytest.raises(ParseError):
        parse_cube("{not json")
    with pytest.raises(ShapeMismatch):
        parse_cube({"dim": 1, "vertices": {"{0}": "Z2"}})
    with pytest.raises(ValidationError):
        parse_cube({"dim": 1, "vertices": {"{0}": "Z2", "{}": "1"}, "arrows": {"{0}->{0}": {"map": [0, 0]}}})
    with pytest.raises(ValidationError):
        parse_cube({"dim": 1, "top": "S3", "normal_subgroups": {"T": ["(0 1)"]},
                    "vertices": {"{0}": "top", "{}": "top / T"}})


def test_explicit_images():
    doc = {"dim": 1, "vertices": {"{0}": "Z4", "{}": "Z2"},
           "arrows": {"{0}->{}": {"images": [[1, 1]]}}}
    assert parse_cube(doc).edge(1, 0).map.tolist() == [0, 1, 0, 1]


@given(st.integers(0, 3), st.integers(0, 10 ** 6))
def test_serialization_round_trip(dim, seed):
    A = random_cube(dim, seed, budget=12)
    text = json.dumps(serialize_cube(A))
    assert parse_cube(text) == A
