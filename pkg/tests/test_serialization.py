import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ppforge import catalog
from ppforge.cli import catalog_document, catalog_names
from ppforge.errors import MalformedInput, NonRationalScalar
from ppforge.serialization import (
    algebra_document,
    make_document,
    parse_document,
    serialize,
)

Z2_TEXT = (
    '{\n'
    '  "kind": "algebra",\n'
    '  "dim": 2,\n'
    '  "star": [[["0", "1"], ["0", "0"]], [["0", "0"], ["0", "0"]]],\n'
    '  "circ": [[["0", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]]\n'
    '}\n'
)


def test_z2_canonical_text():
    doc = parse_document(Z2_TEXT)
    assert doc.kind == "algebra" and doc.dim == 2
    assert doc["star"][0, 0, 1] == 1
    assert np.count_nonzero(doc["star"]) == 1
    assert serialize(doc) == Z2_TEXT
    assert serialize(algebra_document(catalog.algebra("z2"))) == Z2_TEXT


def test_bytes_input_round_trips():
    assert serialize(parse_document(Z2_TEXT.encode())) == Z2_TEXT


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_documents_round_trip_byte_exactly(name):
    text = serialize(catalog_document(name))
    assert serialize(parse_document(text)) == text
    assert text.endswith("}\n")


def test_fractions_are_reduced_on_output():
    doc = parse_document('{"kind": "form", "dim": 2, "omega": [["0", "2/4"], ["-6/4", "0"]]}')
    assert doc["omega"][0, 1] == Fraction(1, 2)
    assert '["0", "1/2"], ["-3/2", "0"]' in serialize(doc)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**6),
                min_size=4, max_size=4))
def test_form_round_trip(entries):
    doc = make_document("form", 2, omega=np.array(entries, dtype=object).reshape(2, 2))
    text = serialize(doc)
    back = parse_document(text)
    assert np.array_equal(back["omega"], doc["omega"])
    assert serialize(back) == text


def test_field_order_is_fixed():
    raw = json.loads(Z2_TEXT)
    shuffled = json.dumps({"circ": raw["circ"], "dim": 2, "star": raw["star"], "kind": "algebra"})
    assert serialize(parse_document(shuffled)) == Z2_TEXT


def test_zero_division_scalar():
    with pytest.raises(NonRationalScalar):
        parse_document('{"kind": "form", "dim": 1, "omega": [["1/0"]]}')


@pytest.mark.parametrize("value", ['1', '0.5', '"x"', '"1.5"', 'null'])
def test_non_rational_scalars(value):
    with pytest.raises(NonRationalScalar):
        parse_document('{"kind": "form", "dim": 1, "omega": [[%s]]}' % value)


def test_missing_dim_has_location():
    with pytest.raises(MalformedInput) as info:
        parse_document('{"kind": "algebra", "star": [], "circ": []}')
    assert "dim" in str(info.value)
    assert info.value.line == 1


def test_ragged_array_points_at_field():
    text = '{"kind": "algebra", "dim": 2,\n"star": [[["1", "0"]], [["0"]]], "circ": []}'
    with pytest.raises(MalformedInput) as info:
        parse_document(text)
    assert (info.value.line, info.value.column, info.value.path) == (2, 1, "star")


def test_wrong_shape_points_at_field():
    text = '{"kind": "algebra", "dim": 1,\n  "star": [[["1"]], [["2"]]], "circ": [[["0"]]]}'
    with pytest.raises(MalformedInput) as info:
        parse_document(text)
    assert "(2, 1, 1)" in str(info.value)
    assert (info.value.line, info.value.column) == (2, 3)


def test_json_syntax_error_location():
    with pytest.raises(MalformedInput) as info:
        parse_document('{"kind": 1')
    assert (info.value.line, info.value.column) == (1, 11)  # end of input


@pytest.mark.parametrize("text", [
    '[1, 2]',
    '{"kind": "algebra", "dim": 1, "star": [[["0"]]], "circ": [[["0"]]], "color": "red"}',
    '{"kind": "nothing", "dim": 1}',
    '{"kind": "algebra", "dim": "2", "star": [], "circ": []}',
    '{"kind": "algebra", "dim": 1, "star": [[["0"]]]}',
    '{"kind": "form", "dim": 1, "omega": [["0"]], "r": [["0"]]}',
    '{"kind": "bundle", "dim": 2, "split": [1, 2]}',
    '{"kind": "rep", "dim": 1, "star": [[["0"]]], "circ": [[["0"]]], "rho": [[["0"]]],'
    ' "mu": [[["0"]]], "theta": [[["0"]]], "gamma": [[["0"]]]}',
])
def test_schema_violations(text):
    with pytest.raises(MalformedInput):
        parse_document(text)


def test_non_utf8_bytes():
    with pytest.raises(MalformedInput):
        parse_document(b'{"kind": "\xff"}')


def test_zero_dimensional_document():
    doc = parse_document('{"kind": "algebra", "dim": 0, "star": [], "circ": []}')
    assert doc["star"].shape == (0, 0, 0)
    assert serialize(parse_document(serialize(doc))) == serialize(doc)


def test_document_conversions():
    doc = catalog_document("double-z2")
    assert doc.split().dim_p == 2
    p = doc.poisson()
    assert np.array_equal(p.dot, doc.pre_poisson().star + doc.pre_poisson().star.transpose(1, 0, 2))
    assert np.array_equal(doc.rmatrix().r, catalog.double_r("z2").r)
    assert doc == parse_document(serialize(doc))
