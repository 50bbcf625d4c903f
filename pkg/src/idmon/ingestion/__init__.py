"""Document ingestion: GDELT theme screening, article retrieval, keyword
filtering, and period sampling."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..errors import FetchError
from ..schema import Document
from .fetch import (
    DEFAULT_PARALLEL_FETCHES,
    ArticleDraft,
    FetchResponse,
    Fetcher,
    FileFetcher,
    HttpFetcher,
    extract_article,
    fetch_article,
    fetch_many,
    parse_meta_date,
    url_key,
)
from .filters import (
    ThemeCount,
    ThemeStats,
    default_keywords,
    default_themes,
    filter_by_keywords,
    filter_by_themes,
    load_list_file,
    theme_stats,
)
from .gdelt import GdeltRecord, GkgColumns, parse_gdelt_export
from .sample import sample_period

__all__ = [
    "ArticleDraft",
    "DEFAULT_PARALLEL_FETCHES",
    "FetchResponse",
    "Fetcher",
    "FileFetcher",
    "GdeltRecord",
    "GkgColumns",
    "HttpFetcher",
    "IngestReport",
    "ThemeCount",
    "ThemeStats",
    "default_keywords",
    "default_themes",
    "extract_article",
    "fetch_article",
    "fetch_many",
    "filter_by_keywords",
    "filter_by_themes",
    "ingest_documents",
    "load_list_file",
    "parse_gdelt_export",
    "parse_meta_date",
    "sample_period",
    "theme_stats",
    "url_key",
]


@dataclass
class IngestReport:
    """Outcome of one ingestion run: kept documents plus exclusion tallies."""

    documents: list[Document] = field(default_factory=list)
    seen: int = 0
    theme_rejected: int = 0
    keyword_rejected: int = 0
    duplicate: int = 0
    fetch_errors: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kept": len(self.documents),
            "seen": self.seen,
            "theme_rejected": self.theme_rejected,
            "keyword_rejected": self.keyword_rejected,
            "duplicate": self.duplicate,
            "fetch_errors": dict(sorted(self.fetch_errors.items())),
        }


def ingest_documents(
    records: Iterable[GdeltRecord],
    fetcher: Fetcher,
    themes: Optional[Iterable[str]] = None,
    keywords: Optional[Iterable[str]] = None,
    require_keywords: bool = True,
    dataset: str = "custom",
    limit: int = DEFAULT_PARALLEL_FETCHES,
) -> IngestReport:
    """Run the full pipeline: theme screen, fetch, extract, keyword screen.

    A record survives when (a) it carries at least one watched theme,
    (b) its article body can be retrieved and extracted, and (c) — unless
    ``require_keywords`` is off — the body mentions at least one of the
    displacement keywords. Both screens must pass; the theme screen alone
    admits too much unrelated crisis coverage. Duplicate URLs keep the
    first occurrence. Document ids are derived from the URL so re-running
    ingestion is idempotent.
    """
    themes = frozenset(themes) if themes is not None else frozenset(default_themes())
    keywords = tuple(keywords) if keywords is not None else tuple(default_keywords())
    report = IngestReport()
    selected: list[GdeltRecord] = []
    seen_urls: set[str] = set()
    for rec in records:
        report.seen += 1
        if not filter_by_themes(rec, themes):
            report.theme_rejected += 1
            continue
        if rec.url in seen_urls:
            report.duplicate += 1
            continue
        seen_urls.add(rec.url)
        selected.append(rec)

    drafts = fetch_many([r.url for r in selected], fetcher, limit=limit)
    for rec in selected:
        outcome = drafts[rec.url]
        if isinstance(outcome, FetchError):
            code = outcome.code
            report.fetch_errors[code] = report.fetch_errors.get(code, 0) + 1
            continue
        if require_keywords and not filter_by_keywords(outcome.text, keywords):
            report.keyword_rejected += 1
            continue
        report.documents.append(
            Document(
                id=url_key(rec.url),
                url=rec.url,
                language=rec.detected_language,
                publication_date=outcome.publication_date or rec.record_date,
                text=outcome.text,
                themes=frozenset(rec.themes) & themes,
                dataset=dataset,
            )
        )
    report.documents.sort(key=lambda d: d.id)
    return report
