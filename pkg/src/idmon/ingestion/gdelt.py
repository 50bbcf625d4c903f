"""Parsing of GDELT-format export files.

Only four fields are read from each record: URL, theme list, language,
and record date. Column positions default to the GKG v2.1 layout but are
parameters, so trimmed custom exports load with the same code path.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional


@dataclass(frozen=True)
class GdeltRecord:
    url: str
    themes: tuple[str, ...]
    detected_language: str = "en"
    record_date: Optional[dt.date] = None


@dataclass(frozen=True)
class GkgColumns:
    """0-based column positions in the export."""

    date: int = 1
    url: int = 4
    themes: int = 7
    translation_info: int = 25


def _parse_record_date(raw: str) -> Optional[dt.date]:
    digits = raw.strip()
    if len(digits) >= 8 and digits[:8].isdigit():
        try:
            return dt.date(int(digits[:4]), int(digits[4:6]), int(digits[6:8]))
        except ValueError:
            return None
    return None


def _parse_themes(raw: str) -> tuple[str, ...]:
    # Enhanced-theme entries carry a ",offset" suffix; keep the name only.
    out = []
    for entry in raw.split(";"):
        name = entry.split(",")[0].strip()
        if name:
            out.append(name)
    return tuple(out)


def _parse_language(raw: str) -> str:
    # Translation-info field looks like "srclc:fra;eng:GT-FRA 1.0"; records
    # without it were published in English.
    for part in raw.split(";"):
        part = part.strip()
        if part.startswith("srclc:"):
            code = part[len("srclc:"):].strip().lower()
            return {"fra": "fr", "spa": "es", "eng": "en"}.get(code, code[:2] or "en")
    return "en"


def parse_gdelt_export(
    path: str | Path,
    columns: GkgColumns = GkgColumns(),
) -> Iterator[GdeltRecord]:
    """Yield records from a `.tsv`/`.csv` export, skipping unusable rows."""
    path = Path(path)
    delimiter = "," if path.suffix.lower() == ".csv" else "\t"
    needed = max(columns.date, columns.url, columns.themes)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh, delimiter=delimiter):
            if len(row) <= needed:
                continue
            url = row[columns.url].strip()
            if not url:
                continue
            lang_raw = row[columns.translation_info] if len(row) > columns.translation_info else ""
            yield GdeltRecord(
                url=url,
                themes=_parse_themes(row[columns.themes]),
                detected_language=_parse_language(lang_raw),
                record_date=_parse_record_date(row[columns.date]),
            )
