import json

import pytest
from hypothesis import given, strategies as st

from artifact import catalog
from artifact.algebra import check_group
from artifact.documents import (Document, Surjection, canonical_json, document_of, from_data, loads, parse,
                                write)
from artifact.errors import DanglingReference, DuplicateLabel, InputError, ParseError
from artifact.groupoid import fiber_product_groupoid
from helpers import abelian_group


def test_z2_stanza_parses_to_order_two(emitted):
    doc = parse(emitted / "Z2.json")
    assert isinstance(doc, Document)
    assert doc.get("Z2").order == 2


def test_dangling_reference():
    text = json.dumps({"kind": "document", "stanzas": [
        {"kind": "hom", "name": "f", "source": "Z2", "target": "Z2", "map": [["0", "0"], ["1", "1"]]}]})
    with pytest.raises(DanglingReference):
        loads(text)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        loads('{"kind": "document",\n  "stanzas": [}')
    assert exc.value.line == 2 and exc.value.col > 0


def test_duplicate_names():
    stanza = {"kind": "group", "name": "G", "preset": "cyclic", "n": 2}
    with pytest.raises(DuplicateLabel):
        loads(json.dumps({"kind": "document", "stanzas": [stanza, stanza]}))


def test_unknown_kind_is_an_input_error():
    with pytest.raises(InputError):
        loads(json.dumps({"kind": "document", "stanzas": [{"kind": "torus", "name": "T"}]}))


def test_presets():
    doc = loads(json.dumps({"kind": "document", "stanzas": [
        {"kind": "group", "name": "C4", "preset": "cyclic", "n": 4},
        {"kind": "group", "name": "S", "preset": "symmetric", "n": 3}]}))
    assert doc.get("C4").order == 4 and doc.get("S").order == 6


def test_catalog_round_trip_is_byte_stable():
    for name, data in catalog.files().items():
        text = canonical_json(data)
        again = loads(text).dumps()
        assert again == text, name
        assert loads(again).dumps() == again


def test_canonical_json_sorted_with_trailing_newline():
    text = canonical_json({"b": 1, "a": [1, 2]})
    assert text.endswith("\n") and text.index('"a"') < text.index('"b"')


def test_write_and_parse(tmp_path):
    write(catalog.files()["A3<S3.json"], tmp_path / "cm.json")
    doc = parse(tmp_path / "cm.json")
    assert doc.kinds["A3<S3"] == "crossed_module"


def test_missing_file():
    with pytest.raises(InputError):
        parse("/nonexistent/file.json")


@given(st.lists(st.integers(1, 4), min_size=1, max_size=2))
def test_group_round_trip_property(orders):
    G = abelian_group(orders)
    data = document_of([("G", G)])
    text = canonical_json(data)
    doc = loads(text)
    H = doc.get("G")
    assert check_group(H).ok and H.order == G.order
    assert H.mul == G.mul
    assert doc.dumps() == text


@given(st.dictionaries(st.sampled_from("abcdef"), st.sampled_from("xyz"), min_size=1))
def test_surjection_round_trip_property(pi):
    s = Surjection("s", pi)
    text = canonical_json(document_of([("s", s)]))
    back = loads(text).get("s")
    assert back.mapping == pi
    assert fiber_product_groupoid(back.mapping, back.base).n_arrows == \
        fiber_product_groupoid(pi).n_arrows


def test_from_data_rejects_non_documents():
    with pytest.raises(InputError):
        from_data([1, 2, 3])
