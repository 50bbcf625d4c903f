"""idmon: tools for monitoring internal displacement in news text.

Subpackages: ``schema`` (annotation data model and validation),
``ingestion`` (article acquisition and sampling), ``store`` (projects,
assignments, annotation logs), ``agreement`` (inter-annotator
reliability), ``mlpipe`` (document triage classifiers), ``service``
(HTTP facade), ``cli`` (batch entry points).
"""

__version__ = "0.1.0"
