/** Browser entry point: wires the workspace to a page.
 *
 * Expects the service to be reachable at the page origin (run it behind
 * the same host, e.g. `idmon serve` plus any static file server for
 * this bundle) and reads `?project=<id>&annotator=<id>` from the URL.
 */

import { ApiClient } from "./api.js";
import { buildViewModel, renderWorkspace } from "./view.js";
import { Workspace } from "./workspace.js";

export async function start(root: HTMLElement): Promise<Workspace> {
  const params = new URLSearchParams(window.location.search);
  const projectId = params.get("project") ?? "default";
  const annotatorId = params.get("annotator") ?? "";
  const api = new ApiClient(window.location.origin, annotatorId);
  const workspace = new Workspace(api, projectId);

  const guidelines = document.createElement("details");
  guidelines.className = "guidelines";
  const summary = document.createElement("summary");
  summary.textContent = "Annotation guidelines";
  guidelines.appendChild(summary);
  const guidelinesBody = document.createElement("pre");
  guidelines.appendChild(guidelinesBody);
  api.getGuidelines().then((markdown) => {
    guidelinesBody.textContent = markdown;
  });

  const mount = document.createElement("div");
  root.textContent = "";
  root.appendChild(guidelines);
  root.appendChild(mount);

  const redraw = () => {
    if (!workspace.draft) {
      mount.textContent = "All assignments done.";
      return;
    }
    const vm = buildViewModel(
      workspace.draft,
      workspace.flaggedSpans,
      workspace.formErrors,
      workspace.remaining,
    );
    renderWorkspace(mount, vm, {
      onSelectLabel: (task, label) => {
        if (!workspace.draft) return;
        if (task === "Relevance") workspace.draft.setRelevance(label);
        else if (task === "Type") workspace.draft.setDocType(label);
        redraw();
      },
      onSubmit: () => {
        void workspace.submit().then(redraw, redraw);
      },
    });
  };

  await workspace.loadNext();
  redraw();
  return workspace;
}

declare global {
  interface Window {
    idmonWorkspaceAutostart?: boolean;
  }
}

if (typeof window !== "undefined" && window.idmonWorkspaceAutostart !== false) {
  const root = typeof document !== "undefined" && document.getElementById("workspace");
  if (root) void start(root);
}
