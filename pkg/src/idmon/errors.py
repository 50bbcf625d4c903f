"""Exception types shared across the toolkit.

Every error carries a stable machine-readable ``code`` so the HTTP layer
and the CLI can map failures without string matching.
"""

from __future__ import annotations


class IdmonError(Exception):
    """Base class; ``code`` is a stable kebab-case identifier."""

    code = "error"

    def __init__(self, message: str, *, details: object = None):
        super().__init__(message)
        self.message = message
        self.details = details


class UnknownLabelError(IdmonError):
    code = "unknown-label"


class UnknownDocumentError(IdmonError):
    code = "unknown-document"


class UnknownProjectError(IdmonError):
    code = "unknown-project"


class UnknownAnnotatorError(IdmonError):
    code = "unknown-annotator"


class ParseError(IdmonError):
    code = "parse-error"


class ValidationFailedError(IdmonError):
    """Submission rejected; ``report`` holds the full ValidationReport."""

    code = "validation-failed"

    def __init__(self, message: str, report):
        super().__init__(message, details=report.to_json())
        self.report = report


class NoAssignmentError(IdmonError):
    code = "no-assignment"


class DuplicateSubmissionError(IdmonError):
    code = "duplicate-submission"


class NotEnoughAnnotatorsError(IdmonError):
    code = "not-enough-annotators"


class InsufficientPopulationError(IdmonError):
    code = "insufficient-population"


class FetchError(IdmonError):
    """Article retrieval failure; subclasses distinguish the stage."""

    code = "fetch-failed"

    def __init__(self, message: str, *, status: int | None = None, details: object = None):
        super().__init__(message, details=details)
        self.status = status


class NonHtmlPayloadError(FetchError):
    code = "non-html-payload"


class EmptyExtractionError(FetchError):
    code = "empty-extraction"


class EmptyVocabularyError(IdmonError):
    code = "empty-vocabulary"


class SingleClassError(IdmonError):
    code = "single-class"


class FoldDegeneracyError(IdmonError):
    code = "fold-degeneracy"


class NoEligibleUnitsError(IdmonError):
    code = "no-eligible-units"


class StorageError(IdmonError):
    code = "storage-error"
