"""Canonical JSON helpers: stable bytes, lossless round trips."""

import json

from idmon.jsonio import (
    append_jsonl,
    dumps,
    dumps_pretty,
    read_json,
    read_jsonl,
    write_json,
    write_jsonl,
)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [2, 3]}) == '{"a":[2,3],"b":1}'
    # Same object, different construction order -> same bytes.
    assert dumps({"a": [2, 3], "b": 1}) == dumps({"b": 1, "a": [2, 3]})


def test_dumps_keeps_unicode():
    assert dumps({"t": "déplacés"}) == '{"t":"déplacés"}'


def test_pretty_round_trip(tmp_path):
    obj = {"z": [1, {"y": None}], "a": "ü"}
    path = tmp_path / "o.json"
    write_json(path, obj)
    text = path.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert json.loads(dumps_pretty(obj)) == obj
    assert read_json(path) == obj


def test_jsonl_round_trip(tmp_path):
    rows = [{"i": i} for i in range(5)]
    path = tmp_path / "rows.jsonl"
    assert write_jsonl(path, rows) == 5
    assert list(read_jsonl(path)) == rows


def test_append_jsonl_appends(tmp_path):
    path = tmp_path / "log.jsonl"
    assert append_jsonl(path, [{"i": 0}]) == 1
    assert append_jsonl(path, ({"i": i} for i in (1, 2))) == 2
    assert list(read_jsonl(path)) == [{"i": 0}, {"i": 1}, {"i": 2}]


def test_read_jsonl_skips_blank_lines(tmp_path):
    path = tmp_path / "gaps.jsonl"
    path.write_text('{"a":1}\n\n{"a":2}\n', encoding="utf-8")
    assert list(read_jsonl(path)) == [{"a": 1}, {"a": 2}]
