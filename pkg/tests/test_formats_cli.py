import io
import sys

import pytest

from fibercalc.formats import (parse_text, serialize_text, parse_json,
                               serialize_json, ParseError)
from fibercalc.fincat import MissingComposite
from fibercalc.cli import main


SAMPLE = """
category I
  objects: 0 1
  arrow a : 0 -> 1

category P
  objects: *

functor pick1 : P -> I
  object * => 1

calibration isosI
  base I
  members:
"""


def test_parse_and_entities():
    doc = parse_text(SAMPLE)
    assert set(doc.categories) == {"I", "P"}
    assert "pick1" in doc.functors
    assert "isosI" in doc.calibrations
    assert doc.calibrations["isosI"].pointed


def test_identities_implicit():
    doc = parse_text(SAMPLE)
    I = doc.categories["I"]
    assert I.ident["0"] == "1_0"
    assert I.comp[("a", "1_0")] == "a"


def test_unspecified_composite_is_error():
    bad = """
category C
  objects: x y z
  arrow f : x -> y
  arrow g : y -> z
"""
    with pytest.raises(MissingComposite):
        parse_text(bad)


def test_text_round_trip_canonical():
    doc = parse_text(SAMPLE)
    canon = serialize_text(doc)
    doc2 = parse_text(canon)
    assert serialize_text(doc2) == canon
    assert doc2.categories["I"] == doc.categories["I"]
    assert doc2.functors["pick1"] == doc.functors["pick1"]


def test_json_round_trip():
    doc = parse_text(SAMPLE)
    blob = serialize_json(doc)
    doc2 = parse_json(blob)
    assert serialize_json(doc2) == blob
    assert doc2.categories["I"] == doc.categories["I"]


def test_parse_error_reports_line():
    with pytest.raises(ParseError):
        parse_text("nonsense stanza here")


def _run(argv, tmp_path, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_cli_validate_and_exit_codes(tmp_path, capsys):
    f = tmp_path / "sample.fc"
    f.write_text(SAMPLE)
    code, out = _run(["validate", str(f)], tmp_path, capsys)
    assert code == 0 and "status: ok" in out

    bad = tmp_path / "bad.fc"
    bad.write_text("what is this")
    code, out = _run(["validate", str(bad)], tmp_path, capsys)
    assert code == 2

    code, out = _run(["--cap-objects", "1", "validate", str(f)], tmp_path,
                     capsys)
    assert code == 3


def test_cli_functor_class(tmp_path, capsys):
    f = tmp_path / "sample.fc"
    f.write_text(SAMPLE)
    code, out = _run(["functor-class", str(f), "--functor", "pick1"],
                     tmp_path, capsys)
    assert code == 0
    assert "discrete_opfib: True" in out


def test_cli_classify_missing_pullback_exit_1(tmp_path, capsys):
    vee = """
category V
  objects: x y z
  arrow f : x -> z
  arrow g : y -> z

category One
  objects: e

functor idOne : One -> One
  object e => e

indexed C
  base V
  fiber x = One
  fiber y = One
  fiber z = One
  transition f = idOne
  transition g = idOne
"""
    f = tmp_path / "vee.fc"
    f.write_text(vee)
    code, out = _run(["classify", str(f), "--indexed", "C", "--arrow", "f"],
                     tmp_path, capsys)
    assert code == 1 and "MissingPullback" in out


def test_cli_corpus_row_and_determinism(tmp_path, capsys):
    code, out1 = _run(["corpus", "--row", "codomain-m3"], tmp_path, capsys)
    assert code == 0 and "passed: True" in out1
    code, out2 = _run(["corpus", "--row", "codomain-m3"], tmp_path, capsys)
    assert out1 == out2


def test_cli_unknown_row_exit_2(tmp_path, capsys):
    code, out = _run(["corpus", "--row", "unknown"], tmp_path, capsys)
    assert code == 2 and "row-not-finite-scale" in out


def test_cli_props_deterministic(tmp_path, capsys):
    code, out1 = _run(["--seed", "3", "props", "--instances", "10"],
                      tmp_path, capsys)
    assert code == 0
    code, out2 = _run(["--seed", "3", "props", "--instances", "10"],
                      tmp_path, capsys)
    assert out1 == out2
    code, out3 = _run(["--seed", "4", "--format", "structured", "props",
                       "--instances", "10"], tmp_path, capsys)
    assert code == 0 and out3.startswith("{")


def test_cli_serialize_normal_form(tmp_path, capsys):
    f = tmp_path / "sample.fc"
    f.write_text(SAMPLE)
    code, out1 = _run(["serialize", str(f)], tmp_path, capsys)
    f2 = tmp_path / "canon.fc"
    f2.write_text(out1)
    code, out2 = _run(["serialize", str(f2)], tmp_path, capsys)
    assert out1 == out2
