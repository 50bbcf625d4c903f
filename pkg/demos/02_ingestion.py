#!/usr/bin/env python3
"""Document ingestion from a news-metadata export.

Builds a miniature tab-separated export (GKG v2.1 column layout) plus a
directory of saved HTML pages, then runs the full pipeline: theme
filter, keyword filter, deduplication, article extraction. Ends with
the bundled 2019 theme-frequency table.
"""

import tempfile
from pathlib import Path

import idmon
from idmon.ingestion import (
    FileFetcher,
    ThemeStats,
    default_keywords,
    default_themes,
    ingest_documents,
    parse_gdelt_export,
    url_key,
)

workdir = Path(tempfile.mkdtemp(prefix="ingest-demo-"))
pages = workdir / "pages"
pages.mkdir()

ARTICLE = """<html>
<head><meta property="article:published_time" content="2019-03-05"></head>
<body>
<p>Hundreds of people were displaced by floods on Monday, officials said.</p>
<p>Emergency shelters opened across the county as the river kept rising.</p>
</body></html>"""
OFFTOPIC = "<html><body><p>The local team won the football championship.</p></body></html>"

records = [
    ("http://news.example/floods", "NATURAL_DISASTER;REFUGEES", ARTICLE),
    ("http://news.example/floods?utm=feed", "REFUGEES", ARTICLE),  # same page, new URL
    ("http://news.example/sports", "SPORTS", OFFTOPIC),
    ("http://news.example/markets", "REFUGEES", OFFTOPIC),  # themed but no keywords
]
rows = []
for url, themes, html in records:
    row = [""] * 27
    row[1], row[4], row[7] = "20190305120000", url, themes
    rows.append("\t".join(row))
    (pages / (url_key(url) + ".html")).write_text(html, encoding="utf-8")
export = workdir / "export.tsv"
export.write_text("\n".join(rows) + "\n", encoding="utf-8")

print("== Watched themes and keyword list ==")
print(f"  {len(default_themes())} themes, e.g. {sorted(default_themes())[:3]}")
print(f"  {len(default_keywords())} keywords, e.g. {list(default_keywords())[:5]}")
print()

print("== Parsed export records ==")
for rec in parse_gdelt_export(export):
    print(f"  {rec.url:<38} themes={sorted(rec.themes)}")
print()

report = ingest_documents(parse_gdelt_export(export), FileFetcher(pages))
print("== Pipeline tallies ==")
for field in ("seen", "theme_rejected", "keyword_rejected", "duplicate"):
    print(f"  {field:<17} {getattr(report, field)}")
print(f"  {'fetch_errors':<17} {sum(report.fetch_errors.values())}")
print(f"  {'kept':<17} {len(report.documents)}")
print()

print("== Kept documents ==")
for doc in report.documents:
    print(f"  id={doc.id}")
    print(f"  url={doc.url}")
    print(f"  date={doc.publication_date}  (page metadata beats the record timestamp)")
    print(f"  text={doc.text[:60]!r}...")
print()

print("== Bundled 2019 theme-frequency table ==")
counts_file = Path(idmon.__file__).parent / "data" / "theme_counts_2019.tsv"
print(ThemeStats.from_counts_file(counts_file).to_text())
