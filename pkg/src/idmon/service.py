"""HTTP facade over one project store.

The annotation workspace and any automation talk to these endpoints;
identity is a trusted ``X-Annotator-Id`` header (the tool runs behind a
trusted boundary). All mutations funnel through the store's single
writer; machine-learning reports run off the request path in a worker
thread and are polled with a token. Every error uses the body shape
``{error_code, message, details}``.
"""

from __future__ import annotations

import hashlib
import threading
from typing import Any, Mapping, Optional

from fastapi import FastAPI, Header, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .agreement import DEFAULT_SIMILARITY_THRESHOLD, ROUND_CHOICES, ROUND_CURRENT, agreement_report
from .errors import (
    IdmonError,
    ParseError,
    UnknownAnnotatorError,
    UnknownProjectError,
)
from .mlpipe import (
    CLASSIFIER_KINDS,
    DEFAULT_SPLITS,
    TASK_RELEVANCE,
    TASK_TYPE,
    build_labeled_sets,
    evaluate,
)
from .schema import Annotation, guidelines_text
from .store import Store

ERROR_STATUS: dict[str, int] = {
    "parse-error": 400,
    "unknown-annotator": 403,
    "unknown-document": 404,
    "unknown-project": 404,
    "unknown-label": 422,
    "validation-failed": 422,
    "no-assignment": 409,
    "duplicate-submission": 409,
    "not-enough-annotators": 409,
    "insufficient-population": 409,
    "single-class": 409,
    "fold-degeneracy": 409,
    "empty-vocabulary": 409,
    "no-eligible-units": 409,
    "storage-error": 500,
}

ML_TASKS = (TASK_RELEVANCE, TASK_TYPE)


class MlJobRegistry:
    """Background ML evaluations keyed by their full parameter set.

    Identical requests share one job; the registry hands back a token
    for polling. Results stay cached for the life of the process.
    """

    def __init__(self, store: Store):
        self.store = store
        self._lock = threading.Lock()
        self._jobs: dict[str, dict[str, Any]] = {}

    @staticmethod
    def _token(params: Mapping[str, Any]) -> str:
        canonical = "&".join(f"{k}={params[k]}" for k in sorted(params))
        return hashlib.sha1(canonical.encode("utf-8")).hexdigest()[:12]

    def submit(self, params: Mapping[str, Any]) -> dict[str, Any]:
        token = self._token(params)
        with self._lock:
            if token not in self._jobs:
                self._jobs[token] = {
                    "status": "running",
                    "token": token,
                    "params": dict(params),
                }
                worker = threading.Thread(
                    target=self._run, args=(token, dict(params)), daemon=True
                )
                worker.start()
        return self.status(token)

    def _run(self, token: str, params: dict[str, Any]) -> None:
        try:
            labeled_sets = build_labeled_sets(self.store.current_annotations())
            labeled = labeled_sets[params["task"]]
            texts = {d.id: d.text for d in self.store.documents}
            result = evaluate(
                params["classifier"],
                texts,
                labeled,
                splits=params["splits"],
                seed=params["seed"],
            )
            outcome = {"status": "done", "report": result.to_json()}
        except IdmonError as exc:
            outcome = {
                "status": "error",
                "error_code": exc.code,
                "message": exc.message,
            }
        except Exception as exc:  # keep the poll channel alive on any failure
            outcome = {"status": "error", "error_code": "error", "message": str(exc)}
        with self._lock:
            self._jobs[token].update(outcome)

    def status(self, token: str) -> dict[str, Any]:
        with self._lock:
            job = self._jobs.get(token)
            if job is None:
                return {"status": "unknown", "token": token}
            view = {"status": job["status"], "token": token}
            if job["status"] == "done":
                view["report"] = job["report"]
            elif job["status"] == "error":
                view["error_code"] = job["error_code"]
                view["message"] = job["message"]
            return view


def _error_body(code: str, message: str, details: Any = None) -> dict[str, Any]:
    return {"error_code": code, "message": message, "details": details}


def create_app(store: Store) -> FastAPI:
    app = FastAPI(title="idmon annotation service", version="1")
    jobs = MlJobRegistry(store)

    @app.exception_handler(IdmonError)
    async def idmon_error_handler(request: Request, exc: IdmonError):
        status = ERROR_STATUS.get(exc.code, 500)
        return JSONResponse(
            status_code=status,
            content=_error_body(exc.code, exc.message, exc.details),
        )

    @app.exception_handler(RequestValidationError)
    async def parse_error_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content=_error_body("parse-error", "malformed request", exc.errors()),
        )

    def check_project(project_id: str) -> None:
        if project_id != store.project.id:
            raise UnknownProjectError(f"unknown project {project_id}")

    def check_annotator(annotator_id: Optional[str]) -> str:
        if not annotator_id:
            raise UnknownAnnotatorError("missing X-Annotator-Id header")
        if annotator_id not in store.project.annotators:
            raise UnknownAnnotatorError(f"unknown annotator {annotator_id}")
        return annotator_id

    @app.get("/api/schema")
    def get_schema():
        return store.schema.to_json()

    @app.get("/api/guidelines")
    def get_guidelines():
        return {"markdown": guidelines_text()}

    @app.get("/api/documents/{document_id}")
    def get_document(document_id: str):
        return store.document(document_id).to_json()

    @app.get("/api/projects/{project_id}/next")
    def next_assignment(
        project_id: str, x_annotator_id: Optional[str] = Header(default=None)
    ):
        check_project(project_id)
        annotator = check_annotator(x_annotator_id)
        pending = store.next_pending(annotator)
        remaining = sum(
            1 for a in store.assignments_for(annotator) if a.status == "pending"
        )
        if pending is None:
            return {"document": None, "schema": None, "remaining": 0}
        doc = store.document(pending.document_id)
        return {
            "document": doc.to_json(),
            "schema": store.schema.to_json(),
            "publication_date": doc.publication_date.isoformat()
            if doc.publication_date
            else None,
            "remaining": remaining,
        }

    @app.post("/api/projects/{project_id}/annotations", status_code=201)
    async def submit_annotation(
        project_id: str,
        request: Request,
        x_annotator_id: Optional[str] = Header(default=None),
    ):
        check_project(project_id)
        annotator = check_annotator(x_annotator_id)
        try:
            body = await request.json()
        except Exception as exc:
            raise ParseError(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(body, dict):
            raise ParseError("annotation payload must be a JSON object")
        body.setdefault("annotator_id", annotator)
        if body["annotator_id"] != annotator:
            raise UnknownAnnotatorError(
                "annotation annotator_id does not match X-Annotator-Id"
            )
        annotation = Annotation.from_json(body)
        stored_id = store.submit(annotation)
        return {"stored_id": stored_id, "document_id": annotation.document_id}

    @app.get("/api/projects/{project_id}/reports/agreement")
    def report_agreement(
        project_id: str,
        round: str = ROUND_CURRENT,
        threshold: float = DEFAULT_SIMILARITY_THRESHOLD,
    ):
        check_project(project_id)
        if round not in ROUND_CHOICES:
            raise ParseError(f"round must be one of {ROUND_CHOICES}")
        report = agreement_report(
            store.documents,
            store.all_annotations(),
            store.schema,
            round=round,
            threshold=threshold,
        )
        return report.to_json()

    @app.get("/api/projects/{project_id}/reports/ml")
    def report_ml(
        project_id: str,
        task: str = TASK_RELEVANCE,
        classifier: str = "logreg",
        splits: int = DEFAULT_SPLITS,
        seed: int = 0,
        token: Optional[str] = None,
    ):
        check_project(project_id)
        if token is not None:
            return jobs.status(token)
        if task == "type":
            task = TASK_TYPE
        if task not in ML_TASKS:
            raise ParseError(f"task must be one of {ML_TASKS} (or 'type')")
        if classifier not in CLASSIFIER_KINDS:
            raise ParseError(f"classifier must be one of {CLASSIFIER_KINDS}")
        return jobs.submit(
            {"task": task, "classifier": classifier, "splits": splits, "seed": seed}
        )

    return app
