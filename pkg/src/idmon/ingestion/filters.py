"""Theme and keyword filters plus per-theme occurrence statistics."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .gdelt import GdeltRecord

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def _tokens(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def load_list_file(path: str | Path) -> list[str]:
    """Newline-delimited UTF-8 list; blank lines and #-comments ignored."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def default_keywords() -> list[str]:
    text = resources.files("idmon.data").joinpath("keywords.txt").read_text(encoding="utf-8")
    return [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#")]


def default_themes() -> list[str]:
    text = resources.files("idmon.data").joinpath("themes.txt").read_text(encoding="utf-8")
    return [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#")]


def filter_by_themes(rec: GdeltRecord, wanted: Iterable[str]) -> bool:
    """True iff the record carries at least one wanted theme."""
    wanted_set = set(wanted)
    return any(t in wanted_set for t in rec.themes)


def filter_by_keywords(text: str, keywords: Sequence[str]) -> bool:
    """Word-boundary match: single keywords as whole tokens, multi-word
    keywords as contiguous token sequences. Case-insensitive; keyword
    surface forms are matched exactly, no stemming."""
    toks = _tokens(text)
    if not toks:
        return False
    unigrams = set(toks)
    for kw in keywords:
        kw_toks = _tokens(kw)
        if not kw_toks:
            continue
        if len(kw_toks) == 1:
            if kw_toks[0] in unigrams:
                return True
        else:
            k = len(kw_toks)
            for i in range(len(toks) - k + 1):
                if toks[i : i + k] == kw_toks:
                    return True
    return False


@dataclass
class ThemeCount:
    refs: int = 0
    docs: int = 0


@dataclass
class ThemeStats:
    """Reference and document counts per theme.

    ``total_docs`` counts distinct documents (a document carrying several
    themes is counted once), so it is at most the per-theme column sum.
    """

    per_theme: dict[str, ThemeCount] = field(default_factory=dict)
    total_refs: int = 0
    total_docs: int = 0

    def to_json(self) -> dict:
        return {
            "themes": {
                name: {"refs": c.refs, "docs": c.docs} for name, c in sorted(self.per_theme.items())
            },
            "total": {"refs": self.total_refs, "docs": self.total_docs},
        }

    def to_text(self) -> str:
        rows = sorted(self.per_theme.items(), key=lambda kv: -kv[1].refs)
        width = max([len("Theme")] + [len(name) for name, _ in rows]) if rows else len("Theme")
        lines = [f"{'Theme':<{width}}  {'#refs':>12}  {'#docs':>12}"]
        for name, c in rows:
            lines.append(f"{name:<{width}}  {c.refs:>12,}  {c.docs:>12,}")
        lines.append(f"{'Total':<{width}}  {self.total_refs:>12,}  {self.total_docs:>12,}")
        return "\n".join(lines)

    @classmethod
    def from_counts_file(cls, path: str | Path) -> "ThemeStats":
        """Load a pre-aggregated `theme<TAB>refs<TAB>docs` table. A `Total`
        row, when present, supplies the distinct-document total."""
        stats = cls()
        explicit_total = None
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, refs, docs = line.split("\t")
            if name.lower() == "theme":
                continue
            if name.lower() == "total":
                explicit_total = (int(refs), int(docs))
                continue
            stats.per_theme[name] = ThemeCount(refs=int(refs), docs=int(docs))
        if explicit_total is not None:
            stats.total_refs, stats.total_docs = explicit_total
        else:
            stats.total_refs = sum(c.refs for c in stats.per_theme.values())
            stats.total_docs = sum(c.docs for c in stats.per_theme.values())
        return stats


def theme_stats(records: Iterable[GdeltRecord]) -> ThemeStats:
    """Tally theme references and distinct documents over a record stream."""
    stats = ThemeStats()
    for rec in records:
        if not rec.themes:
            continue
        stats.total_docs += 1
        seen: set[str] = set()
        for theme in rec.themes:
            count = stats.per_theme.setdefault(theme, ThemeCount())
            count.refs += 1
            stats.total_refs += 1
            if theme not in seen:
                count.docs += 1
                seen.add(theme)
    return stats
