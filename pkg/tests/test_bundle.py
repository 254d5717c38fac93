import json

import pytest

from hopfheap import corpus
from hopfheap.bundle import CORPUS_DIR, dump_bundle, load_bundle, parse_bundle
from hopfheap.catalog import trig_rb_kill_u, trig_rb_negate_u
from hopfheap.errors import DanglingReference, DimMismatch, FieldMismatch, ParseError
from hopfheap.heap import HopfHeap
from hopfheap.kernel import FieldSpec
from hopfheap.rota import RBHeap

CORPUS_FILES = sorted(CORPUS_DIR.glob("*.json"))


def _trig_doc():
    return json.loads((CORPUS_DIR / "trig2.json").read_text(encoding="utf-8"))


def test_corpus_is_present():
    assert {p.stem for p in CORPUS_FILES} == {"trig2", "trig2-modules", "z2", "z3", "sweedler"}


@pytest.mark.parametrize("path", CORPUS_FILES, ids=lambda p: p.stem)
def test_round_trip_is_byte_identical(path):
    text = path.read_text(encoding="utf-8")
    assert dump_bundle(load_bundle(path)) == text


def test_corpus_matches_generator(tmp_path):
    for p in corpus.write_corpus(tmp_path):
        assert p.read_text(encoding="utf-8") == (CORPUS_DIR / p.name).read_text(encoding="utf-8")


def test_trig_bundle_contents(trig):
    b = load_bundle("corpus/trig2")
    assert b.names_of_kind("coalgebra") == ["C"]
    assert b.names_of_kind("heap") == ["Hp"]
    assert b.names_of_kind("rb-operator") == ["B_i", "B_ii"]
    hp = b.get("Hp")
    assert isinstance(hp, HopfHeap) and hp.chi == trig.chi
    assert isinstance(b.get("B_i"), RBHeap) and b.get("B_i").B == trig_rb_kill_u()
    assert b.get("B_ii").B == trig_rb_negate_u()


def test_bad_scalar_is_parse_error():
    doc = _trig_doc()
    doc["objects"]["Hp"]["bracket"][0][-1] = "1/0"
    with pytest.raises(ParseError) as err:
        parse_bundle(json.dumps(doc))
    assert err.value.token == "1/0"
    assert "Hp" in err.value.position


def test_out_of_range_index_is_dim_mismatch():
    doc = _trig_doc()
    doc["objects"]["Hp"]["bracket"].append([5, 0, 0, 0, "1"])
    with pytest.raises(DimMismatch):
        parse_bundle(json.dumps(doc))


def test_dangling_reference():
    doc = _trig_doc()
    doc["objects"]["Hp"]["coalgebra"] = "missing"
    with pytest.raises(DanglingReference):
        parse_bundle(json.dumps(doc))


def test_duplicate_entry_rejected():
    doc = _trig_doc()
    doc["objects"]["Hp"]["bracket"].append([0, 0, 0, 0, "2"])
    with pytest.raises(ParseError):
        parse_bundle(json.dumps(doc))


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as err:
        parse_bundle('{"format": "hopfheap-bundle/1", "objects": {')
    assert "line 1" in err.value.position


def test_field_override_rejects_irrational_entries():
    with pytest.raises(FieldMismatch):
        load_bundle("corpus/trig2", FieldSpec())
    assert load_bundle("corpus/z2", FieldSpec()).field == FieldSpec()
