"""Article retrieval and main-text extraction.

The fetcher is injectable: live deployments use ``HttpFetcher``, tests
and offline ingestion use ``FileFetcher`` over a directory of saved
pages. Extraction keeps the largest contiguous block of paragraph text
after boilerplate stripping and normalizes whitespace.
"""

from __future__ import annotations

import concurrent.futures
import datetime as dt
import hashlib
import html
import re
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path
from typing import Callable, Iterable, Optional

from ..errors import EmptyExtractionError, FetchError, NonHtmlPayloadError
from ..jsonio import read_json

DEFAULT_PARALLEL_FETCHES = 8

_SKIP_TAGS = {"script", "style", "noscript", "template", "svg", "iframe"}
# Structural elements whose start/end breaks paragraph contiguity.
_BLOCK_BREAKERS = {
    "div", "section", "article", "aside", "footer", "header", "nav",
    "ul", "ol", "table", "figure", "form", "h1", "h2", "h3", "h4", "h5", "h6",
}
_DATE_META_KEYS = {
    "article:published_time",
    "og:published_time",
    "date",
    "pubdate",
    "publishdate",
    "datepublished",
    "dc.date.issued",
    "parsely-pub-date",
}


@dataclass(frozen=True)
class FetchResponse:
    status: int
    content_type: str
    body: bytes


@dataclass(frozen=True)
class ArticleDraft:
    text: str
    publication_date: Optional[dt.date] = None
    title: Optional[str] = None


Fetcher = Callable[[str], FetchResponse]


class _ArticleExtractor(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self._skip_depth = 0
        self._in_paragraph = False
        self._in_title = False
        self._current: list[str] = []
        self.blocks: list[list[str]] = [[]]
        self.meta_dates: list[str] = []
        self.title_parts: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
            return
        attrd = dict(attrs)
        if tag == "meta":
            key = (attrd.get("property") or attrd.get("name") or attrd.get("itemprop") or "").lower()
            if key in _DATE_META_KEYS and attrd.get("content"):
                self.meta_dates.append(attrd["content"])
        elif tag == "time" and attrd.get("datetime"):
            self.meta_dates.append(attrd["datetime"])
        elif tag == "title":
            self._in_title = True
        elif tag == "p":
            self._in_paragraph = True
            self._current = []
        elif tag in _BLOCK_BREAKERS:
            if self.blocks[-1]:
                self.blocks.append([])

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
            return
        if tag == "title":
            self._in_title = False
        elif tag == "p":
            if self._in_paragraph:
                para = " ".join(" ".join(self._current).split())
                if para:
                    self.blocks[-1].append(para)
            self._in_paragraph = False
        elif tag in _BLOCK_BREAKERS:
            if self.blocks[-1]:
                self.blocks.append([])

    def handle_data(self, data):
        if self._skip_depth:
            return
        if self._in_title:
            self.title_parts.append(data)
        elif self._in_paragraph:
            self._current.append(data)


def parse_meta_date(raw: str) -> Optional[dt.date]:
    raw = raw.strip()
    m = re.match(r"(\d{4})-(\d{2})-(\d{2})", raw)
    if m:
        try:
            return dt.date(int(m.group(1)), int(m.group(2)), int(m.group(3)))
        except ValueError:
            return None
    if len(raw) >= 8 and raw[:8].isdigit():
        try:
            return dt.date(int(raw[:4]), int(raw[4:6]), int(raw[6:8]))
        except ValueError:
            return None
    return None


def extract_article(html_text: str) -> ArticleDraft:
    """Main-text extraction: largest contiguous paragraph block wins."""
    parser = _ArticleExtractor()
    parser.feed(html_text)
    parser.close()
    blocks = [b for b in parser.blocks if b]
    if blocks:
        best = max(blocks, key=lambda b: sum(len(p) for p in b))
        text = "\n\n".join(best)
    else:
        # No paragraph markup at all: fall back to whole-document text.
        stripped = re.sub(r"(?is)<(script|style|head)[^>]*>.*?</\1>", " ", html_text)
        stripped = re.sub(r"(?s)<[^>]+>", " ", stripped)
        text = " ".join(html.unescape(stripped).split())
    if not text:
        raise EmptyExtractionError("no article text could be extracted")
    date = None
    for raw in parser.meta_dates:
        date = parse_meta_date(raw)
        if date:
            break
    title = " ".join(" ".join(parser.title_parts).split()) or None
    return ArticleDraft(text=text, publication_date=date, title=title)


def fetch_article(url: str, fetcher: Fetcher) -> ArticleDraft:
    """Retrieve one article; failures raise a FetchError subclass whose
    ``code`` distinguishes network, payload, and extraction problems."""
    try:
        resp = fetcher(url)
    except FetchError:
        raise
    except Exception as exc:
        raise FetchError(f"fetch failed for {url}: {exc}") from exc
    if resp.status != 200:
        raise FetchError(f"fetch failed for {url}: HTTP {resp.status}", status=resp.status)
    ctype = resp.content_type.split(";")[0].strip().lower()
    if ctype and ctype not in ("text/html", "application/xhtml+xml"):
        raise NonHtmlPayloadError(f"{url} returned {ctype}, not HTML", status=resp.status)
    charset = "utf-8"
    m = re.search(r"charset=([\w.-]+)", resp.content_type, re.I)
    if m:
        charset = m.group(1)
    try:
        body = resp.body.decode(charset, errors="replace")
    except LookupError:
        body = resp.body.decode("utf-8", errors="replace")
    return extract_article(body)


def fetch_many(
    urls: Iterable[str],
    fetcher: Fetcher,
    limit: int = DEFAULT_PARALLEL_FETCHES,
) -> dict[str, ArticleDraft | FetchError]:
    """Fetch with at most ``limit`` requests in flight."""
    results: dict[str, ArticleDraft | FetchError] = {}
    urls = list(urls)
    with concurrent.futures.ThreadPoolExecutor(max_workers=max(1, limit)) as pool:
        futures = {pool.submit(fetch_article, u, fetcher): u for u in urls}
        for fut in concurrent.futures.as_completed(futures):
            url = futures[fut]
            try:
                results[url] = fut.result()
            except FetchError as exc:
                results[url] = exc
    return results


def url_key(url: str) -> str:
    return hashlib.sha1(url.encode("utf-8")).hexdigest()[:16]


class FileFetcher:
    """Serves saved pages from a directory.

    Files are looked up through an optional ``manifest.json`` ({url: filename})
    or by the hashed name ``<sha1(url)[:16]>.html``. Missing pages yield 404.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        manifest = self.directory / "manifest.json"
        self.manifest: dict[str, str] = read_json(manifest) if manifest.exists() else {}

    def __call__(self, url: str) -> FetchResponse:
        name = self.manifest.get(url, url_key(url) + ".html")
        path = self.directory / name
        if not path.exists():
            return FetchResponse(status=404, content_type="text/html", body=b"")
        return FetchResponse(status=200, content_type="text/html; charset=utf-8", body=path.read_bytes())


class HttpFetcher:
    """Live HTTP fetcher (urllib); for deployments with network access."""

    def __init__(self, timeout: float = 20.0, user_agent: str = "idmon/0.1"):
        self.timeout = timeout
        self.user_agent = user_agent

    def __call__(self, url: str) -> FetchResponse:
        import urllib.request

        req = urllib.request.Request(url, headers={"User-Agent": self.user_agent})
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                return FetchResponse(
                    status=resp.status,
                    content_type=resp.headers.get("Content-Type", ""),
                    body=resp.read(),
                )
        except urllib.error.HTTPError as exc:
            return FetchResponse(status=exc.code, content_type="", body=b"")
        except Exception as exc:
            raise FetchError(f"fetch failed for {url}: {exc}") from exc
