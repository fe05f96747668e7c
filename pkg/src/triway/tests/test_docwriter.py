"""
Tests for document export and configuration reading.
"""

import json
import math
from enum import Enum

import numpy as np
import pytest

from triway.core import ConfigError
from triway.docreader import DocReader
from triway.docwriter import DocWriter


class _Color(Enum):
    RED = "red"


class _Doc:
    def to_dict(self):
        return {"b": 1.0 / 3.0, "a": [np.float64(2.5), np.int64(3)]}


def test_same_document_same_bytes():
    w = DocWriter()
    assert w.emit(_Doc()) == w.emit(_Doc())
    text = w.emit(_Doc()).decode("utf-8")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": [2.5, 3], "b": 0.333333333}


def test_normalize():
    w = DocWriter(digits=3)
    assert w.normalize(math.pi) == 3.14
    assert w.normalize(float("nan")) is None
    assert w.normalize(-0.0) == 0.0
    assert w.normalize({_Color.RED: _Color.RED}) == {"RED": "red"}
    assert w.normalize(np.array([1.23456, 2.0])) == [1.23, 2.0]
    assert w.normalize(np.bool_(True)) is True


def test_csv_and_jsonl():
    w = DocWriter()
    rows = [{"x": 1, "y": None, "z": "skip"}, {"x": 2.0, "y": 0.5}]
    assert w.emit(rows, "csv", ["x", "y"]) == b"x,y\n1,\n2.0,0.5\n"
    assert w.emit(rows[1:], "jsonl") == b'{"x":2.0,"y":0.5}\n'
    assert w.emit([], "jsonl") == b""
    with pytest.raises(ConfigError):
        w.emit(rows, "xml")


def test_write_to_file(tmp_path):
    w = DocWriter()
    out = tmp_path / "doc.json"
    w.write(w.emit({"k": 1}), str(out))
    assert json.loads(out.read_text()) == {"k": 1}


def test_reader(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"snr": "10,100,1000", "n3": 4}')
    r = DocReader()
    assert r.read(str(cfg)) == {"snr": "10,100,1000", "n3": 4}
    assert r.source == str(cfg)
    assert DocReader.merge(r.config, {"n3": 5, "grouped": None}) == {"snr": "10,100,1000", "n3": 5}


def test_reader_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"snr": ')
    with pytest.raises(ConfigError):
        DocReader().read(str(bad))
    with pytest.raises(ConfigError):
        DocReader().read(str(tmp_path / "missing.json"))
    with pytest.raises(ConfigError):
        DocReader().loads("[1, 2]")
    assert DocReader().loads('{"q": 7}') == {"q": 7}
