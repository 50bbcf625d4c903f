"""Canonical JSON serialization.

All artifacts the toolkit writes go through these helpers so that reruns
with identical inputs produce byte-identical files: keys sorted, compact
separators, UTF-8, one trailing newline per object line.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Iterator


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def dumps_pretty(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps_pretty(obj) + "\n", encoding="utf-8")


def read_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_jsonl(path: str | Path, objs: Iterable[Any]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objs:
            fh.write(dumps(obj) + "\n")
            n += 1
    return n


def append_jsonl(path: str | Path, objs: Iterable[Any]) -> int:
    n = 0
    with open(path, "a", encoding="utf-8") as fh:
        for obj in objs:
            fh.write(dumps(obj) + "\n")
            n += 1
    return n


def read_jsonl(path: str | Path) -> Iterator[Any]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)
