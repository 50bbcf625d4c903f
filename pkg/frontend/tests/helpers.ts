import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Draft } from "../src/draft.js";
import { DocumentJson, SchemaDef } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadSchema(): SchemaDef {
  return JSON.parse(readFileSync(join(here, "fixtures", "schema.json"), "utf-8"));
}

export function loadDocument(): DocumentJson {
  return JSON.parse(readFileSync(join(here, "fixtures", "document.json"), "utf-8"));
}

/** A draft exercising all nine tasks: both classifications, every span
 * task, and relations linking the attribute spans to their facts. */
export function nineTaskDraft(): Draft {
  const draft = new Draft(loadDocument(), loadSchema(), "ana");
  draft.setRelevance("Relevant");
  draft.setDocType("News");

  // "Hundreds of people were displaced by floods on Monday near the coast."
  const fact = draft.createSpan("Fact", "Relevant fact", 0, 33);
  draft.setFactTypes(fact.id, ["displaced"]);
  const cause = draft.createSpan("Cause", "Disaster", 37, 43); // "floods"
  const when = draft.createSpan("Date", "Date (stock)", 47, 53); // "Monday"
  draft.editTranscription(when.id, "Date", "2019-03-04");

  // "about 300 residents of Riverton moved to shelters in Hilltop"
  const fact2 = draft.createSpan("Fact", "Relevant fact", 95, 145);
  draft.setFactTypes(fact2.id, ["sheltered", "relocated"]);
  const quantity = draft.createSpan("Quantity", "Person", 91, 94); // "300"
  draft.editTranscription(quantity.id, "Count", "300");
  draft.editTranscription(quantity.id, "Qualifier", "about");
  const origin = draft.createSpan("Location", "County/City/Village/Town/Hamlet", 108, 116); // "Riverton"
  const destination = draft.createSpan(
    "Location Destination",
    "County/City/Village/Town/Hamlet",
    138,
    145,
  ); // "Hilltop"

  // The ninth task, Complex event, is the relation layer itself.
  draft.linkRelation(fact.id, cause.id);
  draft.linkRelation(fact.id, when.id);
  draft.linkRelation(fact2.id, quantity.id);
  draft.linkRelation(fact2.id, origin.id);
  draft.linkRelation(fact2.id, destination.id);
  return draft;
}
