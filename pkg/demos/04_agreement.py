#!/usr/bin/env python3
"""Inter-annotator agreement, from first principles to the full report.

Starts with Krippendorff's alpha on a three-unit toy table, shows what
missing data and degenerate (single-label) data do to it, then runs the
per-task agreement report on the bundled ten-document consensus fixture
— classification tasks plus span tasks in all four comparison modes.
"""

import json
from pathlib import Path

import idmon
from idmon.agreement import ReliabilityData, agreement_report, alpha
from idmon.schema import Annotation, default_schema
from idmon.schema.model import Document

print("== Krippendorff's alpha on a toy table ==")
rows = [
    {"ana": "x", "ben": "x"},
    {"ana": "x", "ben": "y"},
    {"ana": "y", "ben": "y"},
]
result = alpha(ReliabilityData.from_table(rows))
print(f"  three units, one disagreement: alpha = {result.alpha:.6f} (= 4/9)")

missing = rows + [{"ana": "x"}]  # a unit only one person saw is dropped
result = alpha(ReliabilityData.from_table(missing))
print(f"  plus a single-annotator unit:  alpha = {result.alpha:.6f} "
      f"({result.n_units} units kept)")

unanimous = alpha(ReliabilityData.from_table([{"ana": "x", "ben": "x"}] * 5))
print(f"  all same label everywhere:     alpha = {unanimous.alpha} "
      f"(degenerate: {unanimous.degenerate} — no disagreement was possible)")
print()

fixtures = Path(idmon.__file__).parent / "data" / "fixtures"
docs = [Document.from_json(json.loads(line))
        for line in (fixtures / "consensus_documents.jsonl").read_text().splitlines()]
anns = [Annotation.from_json(json.loads(line))
        for line in (fixtures / "consensus_annotations.jsonl").read_text().splitlines()]

report = agreement_report(docs, anns, default_schema())
print(f"== Per-task agreement, {report.consensus_documents} consensus documents ==")
print()
print(report.to_text())
print()
print("Reading the span columns:")
print("  Labels      compare what aligned spans say (their labels)")
print("  Overlap     compare where spans sit (positional overlap only)")
print("  Overlap+Sim also credit repeated mentions with similar wording")
print("  Merged      alpha over labels of greedily aligned span pairs")
fact = report.row("Fact")
print()
print(f"Fact task across modes: labels {fact.alpha_labels:.3f} < "
      f"merged {fact.alpha_merged:.3f} < overlap {fact.alpha_overlap:.3f} < "
      f"overlap+sim {fact.alpha_overlap_sim:.3f}")
print("(stricter comparisons score lower on the same annotations)")
