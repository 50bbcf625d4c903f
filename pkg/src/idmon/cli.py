"""Batch entry points for the whole pipeline.

One multiplexed ``idmon`` binary with subcommands; everything the HTTP
service exposes is also runnable offline. Conventions shared by every
subcommand:

- the effective configuration is echoed to stderr, results go to stdout
  (``--json`` switches report commands to machine-readable output), and
  artifacts go to the files named by ``--out``/``--csv``;
- seeds default to 0 so reruns are reproducible by default, and a rerun
  with identical inputs and seeds produces byte-identical artifacts;
- exit codes: 0 success, 1 usage error, 2 input/output error,
  3 validation failure, 4 degenerate data.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .errors import IdmonError, ParseError, UnknownDocumentError
from .jsonio import dumps, write_json
from .schema import (
    Annotation,
    Document,
    SchemaDef,
    default_schema,
    load_schema,
    validate_annotation,
)
from .store import EXPORT_FORMAT, Project, Store, import_annotations, load_documents, write_documents

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3
EXIT_DEGENERATE = 4

# Exception-code -> exit-code map. Anything unlisted is an input/output
# problem: wrong file, wrong directory, malformed content.
_EXIT_BY_CODE = {
    "validation-failed": EXIT_VALIDATION,
    "unknown-label": EXIT_VALIDATION,
    "unknown-annotator": EXIT_VALIDATION,
    "unknown-document": EXIT_VALIDATION,
    "no-assignment": EXIT_VALIDATION,
    "duplicate-submission": EXIT_VALIDATION,
    "empty-vocabulary": EXIT_DEGENERATE,
    "single-class": EXIT_DEGENERATE,
    "fold-degeneracy": EXIT_DEGENERATE,
    "no-eligible-units": EXIT_DEGENERATE,
    "insufficient-population": EXIT_DEGENERATE,
    "not-enough-annotators": EXIT_DEGENERATE,
}

_ML_TASKS = {
    "relevance": "relevance",
    "type": "type_news_vs_summary",
    "type_news_vs_summary": "type_news_vs_summary",
}


class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit code 2; this CLI reserves 2 for
    input/output failures, so usage problems are remapped to 1."""

    def exit(self, status: int = 0, message: Optional[str] = None):  # type: ignore[override]
        if message:
            sys.stderr.write(message)
        raise SystemExit(EXIT_USAGE if status else EXIT_OK)


def _echo_config(command: str, args: argparse.Namespace, keys: Sequence[str]) -> None:
    parts = []
    for key in keys:
        value = getattr(args, key)
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        parts.append(f"{key.replace('_', '-')}={value}")
    sys.stderr.write(f"config: {command} " + " ".join(parts) + "\n")


def _emit(payload: dict[str, Any], as_json: bool, human: str) -> None:
    if as_json:
        sys.stdout.write(dumps(payload) + "\n")
    else:
        sys.stdout.write(human if human.endswith("\n") else human + "\n")


def _read_annotations(path: str | Path) -> list[Annotation]:
    """Annotations from either the export interchange format (header line)
    or a plain JSONL file of annotation objects."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    body = [line for line in lines if line.strip()]
    if not body:
        return []
    try:
        head = json.loads(body[0])
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line 1 is not JSON: {exc}") from exc
    if isinstance(head, dict) and head.get("format") == EXPORT_FORMAT:
        return import_annotations(body)[1]
    annotations = []
    for lineno, line in enumerate(body, start=1):
        try:
            annotations.append(Annotation.from_json(json.loads(line)))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {lineno} is not JSON: {exc}") from exc
    return annotations


def _load_schema_arg(path: Optional[str]) -> SchemaDef:
    return load_schema(path) if path else default_schema()


def _docs_and_annotations(
    args: argparse.Namespace,
) -> tuple[list[Document], list[Annotation], SchemaDef]:
    """Shared input plumbing for report commands: a store directory, or a
    documents file plus an annotations file."""
    if args.store:
        store = Store.open(args.store)
        return store.documents, store.all_annotations(), store.schema
    docs = load_documents(args.docs)
    annotations = _read_annotations(args.annotations)
    return docs, annotations, _load_schema_arg(getattr(args, "schema", None))


# -- subcommands -------------------------------------------------------------


def cmd_init(args: argparse.Namespace) -> int:
    schema = _load_schema_arg(args.schema)
    annotators = tuple(a.strip() for a in args.annotators.split(",") if a.strip())
    project = Project(
        id=args.project_id,
        name=args.name or args.project_id,
        language=args.language,
        schema_version=schema.version,
        annotators=annotators,
        consensus_fraction=args.consensus_fraction,
        annotators_per_consensus_doc=args.arity,
    )
    _echo_config(
        "init",
        args,
        ("store", "project_id", "language", "consensus_fraction", "arity"),
    )
    Store.create(args.store, project, schema)
    _emit(
        {"project": project.to_json(), "store": str(args.store)},
        args.json,
        f"created project {project.id} at {args.store} ({len(annotators)} annotators)",
    )
    return EXIT_OK


def cmd_add_docs(args: argparse.Namespace) -> int:
    _echo_config("add-docs", args, ("store", "input"))
    store = Store.open(args.store)
    added = store.add_documents(load_documents(args.input))
    _emit(
        {"added": added, "corpus": len(store.documents)},
        args.json,
        f"added {added} documents (corpus size {len(store.documents)})",
    )
    return EXIT_OK


def cmd_ingest(args: argparse.Namespace) -> int:
    from .ingestion import (
        FileFetcher,
        HttpFetcher,
        ingest_documents,
        load_list_file,
        parse_gdelt_export,
    )

    _echo_config(
        "ingest",
        args,
        ("export", "html_dir", "live", "out", "keywords", "themes", "keyword_filter", "dataset"),
    )
    fetcher = HttpFetcher() if args.live else FileFetcher(args.html_dir)
    themes = frozenset(load_list_file(args.themes)) if args.themes else None
    keywords = tuple(load_list_file(args.keywords)) if args.keywords else None
    report = ingest_documents(
        parse_gdelt_export(args.export),
        fetcher,
        themes=themes,
        keywords=keywords,
        require_keywords=args.keyword_filter,
        dataset=args.dataset,
    )
    write_documents(args.out, report.documents)
    summary = report.to_json()
    _emit(
        summary,
        args.json,
        f"wrote {summary['kept']} documents to {args.out} "
        f"(seen {summary['seen']}, theme-rejected {summary['theme_rejected']}, "
        f"keyword-rejected {summary['keyword_rejected']}, "
        f"duplicates {summary['duplicate']}, "
        f"fetch errors {sum(report.fetch_errors.values())})",
    )
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    from .ingestion import sample_period

    _echo_config("sample", args, ("input", "n", "seed", "year", "out"))
    docs = load_documents(args.input)
    chosen = sample_period(docs, args.n, args.seed, year=args.year)
    write_documents(args.out, chosen)
    _emit(
        {"sampled": len(chosen), "population": len(docs), "out": str(args.out)},
        args.json,
        f"sampled {len(chosen)} of {len(docs)} documents to {args.out}",
    )
    return EXIT_OK


def cmd_assign(args: argparse.Namespace) -> int:
    _echo_config("assign", args, ("store", "seed"))
    store = Store.open(args.store)
    created = store.assign(args.seed)
    consensus = store.consensus_document_ids()
    loads = {a: len(store.assignments_for(a)) for a in store.project.annotators}
    _emit(
        {
            "assignments": len(created),
            "consensus_documents": len(consensus),
            "per_annotator": loads,
        },
        args.json,
        f"created {len(created)} assignments "
        f"({len(consensus)} consensus documents); per annotator: "
        + " ".join(f"{a}={n}" for a, n in sorted(loads.items())),
    )
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    _echo_config("validate", args, ("file", "store", "docs", "schema"))
    if args.store:
        store = Store.open(args.store)
        docs = store.documents
        schema = load_schema(args.schema) if args.schema else store.schema
    else:
        docs = load_documents(args.docs)
        schema = _load_schema_arg(args.schema)
    by_id = {d.id: d for d in docs}
    annotations = _read_annotations(args.file)

    findings: list[dict[str, Any]] = []
    n_errors = n_warnings = 0
    for index, ann in enumerate(annotations, start=1):
        doc = by_id.get(ann.document_id)
        if doc is None:
            raise UnknownDocumentError(
                f"annotation {index} references unknown document {ann.document_id!r}"
            )
        report = validate_annotation(doc, ann, schema)
        for violation in report.violations:
            findings.append(
                {
                    "annotation": index,
                    "document_id": ann.document_id,
                    "annotator_id": ann.annotator_id,
                    **violation.to_json(),
                }
            )
            if violation.severity == "error":
                n_errors += 1
            else:
                n_warnings += 1

    if args.json:
        sys.stdout.write(
            dumps(
                {
                    "annotations": len(annotations),
                    "errors": n_errors,
                    "warnings": n_warnings,
                    "violations": findings,
                }
            )
            + "\n"
        )
    else:
        for f in findings:
            sys.stdout.write(
                f"annotation {f['annotation']} ({f['document_id']}/{f['annotator_id']}): "
                f"{f['severity']}: {f['rule_id']}: {f['message']}\n"
            )
        sys.stdout.write(
            f"{len(annotations)} annotations checked: "
            f"{n_errors} errors, {n_warnings} warnings\n"
        )
    return EXIT_VALIDATION if n_errors else EXIT_OK


def cmd_agreement(args: argparse.Namespace) -> int:
    from .agreement import agreement_report

    _echo_config(
        "agreement",
        args,
        ("store", "docs", "annotations", "round", "threshold", "fact_comparison", "out"),
    )
    docs, annotations, schema = _docs_and_annotations(args)
    report = agreement_report(
        docs,
        annotations,
        schema,
        round=args.round,
        threshold=args.threshold,
        fact_comparison=args.fact_comparison,
    )
    if args.out:
        write_json(args.out, report.to_json())
    _emit(report.to_json(), args.json, report.to_text())
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    from .agreement import ROUND_CURRENT, select_round
    from .mlpipe import build_labeled_sets, evaluate

    _echo_config(
        "train",
        args,
        (
            "store",
            "docs",
            "annotations",
            "task",
            "classifier",
            "folds",
            "splits",
            "seed",
            "test_fraction",
            "min_df",
            "out",
            "csv",
        ),
    )
    docs, annotations, _ = _docs_and_annotations(args)
    task = _ML_TASKS[args.task]
    # Review-round annotations supersede the initial ones before labels
    # are majority-resolved.
    labeled = build_labeled_sets(select_round(annotations, ROUND_CURRENT))[task]
    result = evaluate(
        args.classifier,
        docs,
        labeled,
        splits=args.splits,
        seed=args.seed,
        folds=args.folds,
        test_fraction=args.test_fraction,
        min_df=args.min_df,
    )
    if args.out:
        write_json(args.out, result.to_json())
    if args.csv:
        Path(args.csv).write_text(result.splits_csv(), encoding="utf-8")
    _emit(
        result.to_json(),
        args.json,
        (
            f"task={result.task} classifier={result.classifier} "
            f"documents={len(labeled.document_ids)} "
            f"(+{labeled.n_positive}/-{labeled.n_negative})\n"
            f"validation AuROC: {result.validation_auc:.3f} "
            f"± {result.validation_auc_std:.3f}\n"
            f"test AuROC:       {result.test_auc:.3f} "
            f"± {result.test_auc_std:.3f} over {result.splits} splits"
        ),
    )
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    _echo_config("serve", args, ("store", "host", "port"))
    store = Store.open(args.store)
    uvicorn.run(create_app(store), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="idmon",
        description="Monitor internal displacement in news: ingest articles, "
        "run annotation projects, measure agreement, train triage classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("init", help="create a new annotation project directory")
    p.add_argument("--store", required=True, help="project directory to create")
    p.add_argument("--project-id", required=True)
    p.add_argument("--name", default=None, help="display name (default: project id)")
    p.add_argument("--language", default="en")
    p.add_argument("--annotators", required=True, help="comma-separated annotator ids")
    p.add_argument("--consensus-fraction", type=float, default=0.2)
    p.add_argument(
        "--arity", type=int, default=3, help="annotators per consensus document"
    )
    p.add_argument("--schema", default=None, help="schema JSON (default: bundled)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("add-docs", help="append documents from a JSONL corpus file")
    p.add_argument("--store", required=True)
    p.add_argument("--input", required=True, help="documents JSONL file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_add_docs)

    p = sub.add_parser(
        "ingest",
        help="screen a GDELT export by theme, fetch and extract articles, "
        "keyword-filter, and write a documents JSONL file",
    )
    p.add_argument("--export", required=True, help="GDELT export (.tsv/.csv)")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--html-dir", default=None, help="directory of saved HTML pages")
    source.add_argument("--live", action="store_true", help="fetch articles over HTTP")
    p.add_argument("--out", required=True, help="output documents JSONL file")
    p.add_argument("--keywords", default=None, help="keyword list file (default: bundled)")
    p.add_argument("--themes", default=None, help="theme list file (default: bundled)")
    p.add_argument(
        "--no-keyword-filter",
        dest="keyword_filter",
        action="store_false",
        help="keep articles that match no displacement keyword",
    )
    p.add_argument("--dataset", default="custom")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("sample", help="draw a seeded sample from a documents file")
    p.add_argument("--input", required=True, help="documents JSONL file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--year", type=int, default=None, help="restrict to a publication year")
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser(
        "assign", help="distribute unassigned documents across annotators"
    )
    p.add_argument("--store", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_assign)

    p = sub.add_parser(
        "validate",
        help="check an annotations file (export format or plain JSONL) "
        "against the schema; nonzero exit when any error is found",
    )
    p.add_argument("--file", required=True, help="annotations file")
    docs_from = p.add_mutually_exclusive_group(required=True)
    docs_from.add_argument("--store", default=None, help="read documents from a project")
    docs_from.add_argument("--docs", default=None, help="documents JSONL file")
    p.add_argument("--schema", default=None, help="schema JSON (default: store's or bundled)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser(
        "agreement", help="inter-annotator agreement report over consensus documents"
    )
    docs_from = p.add_mutually_exclusive_group(required=True)
    docs_from.add_argument("--store", default=None)
    docs_from.add_argument("--docs", default=None, help="documents JSONL file")
    p.add_argument("--annotations", default=None, help="annotations file (with --docs)")
    p.add_argument("--schema", default=None, help="schema JSON (with --docs)")
    p.add_argument("--round", choices=("initial", "review", "current"), default="current")
    p.add_argument("--threshold", type=float, default=0.8, help="text-similarity threshold")
    p.add_argument(
        "--fact-comparison",
        choices=("set-equality", "any-intersection"),
        default="set-equality",
    )
    p.add_argument("--out", default=None, help="write the report as JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_agreement)

    p = sub.add_parser(
        "train", help="train and evaluate a document-triage classifier"
    )
    docs_from = p.add_mutually_exclusive_group(required=True)
    docs_from.add_argument("--store", default=None)
    docs_from.add_argument("--docs", default=None, help="documents JSONL file")
    p.add_argument("--annotations", default=None, help="annotations file (with --docs)")
    p.add_argument("--task", choices=sorted(_ML_TASKS), required=True)
    p.add_argument(
        "--classifier",
        choices=("mnb", "logreg", "svm_linear", "random_forest", "gradient_boost"),
        required=True,
    )
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--splits", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--test-fraction", type=float, default=0.2)
    p.add_argument("--min-df", type=int, default=5)
    p.add_argument("--out", default=None, help="write the full report as JSON")
    p.add_argument("--csv", default=None, help="write per-split results as CSV")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    p.add_argument("--store", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # Report commands reading from files need both halves of the pair.
    if getattr(args, "docs", None) and not getattr(args, "annotations", True):
        sys.stderr.write("error: usage: --docs requires --annotations\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except IdmonError as exc:
        sys.stderr.write(f"error: {exc.code}: {exc.message}\n")
        return _EXIT_BY_CODE.get(exc.code, EXIT_IO)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: file-not-found: {exc}\n")
        return EXIT_IO
    except OSError as exc:
        sys.stderr.write(f"error: io: {exc}\n")
        return EXIT_IO
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"error: parse-error: {exc}\n")
        return EXIT_IO
    except ValueError as exc:
        sys.stderr.write(f"error: usage: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
