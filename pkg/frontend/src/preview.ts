/** Formula preview pane.
 *
 * The pane never computes or rewrites a formula on the client: it shows
 * exactly the text the service returned, character for character. That
 * keeps the preview honest; whatever appears here is what the rest of
 * the toolchain (monitor, files, CLI) will see.
 */

import type { MtlPreview } from "./types.js";

function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** The exact text the pane displays for a preview body. */
export function previewFormulaText(mtl: MtlPreview): string {
  return mtl.formula ?? "";
}

/** Render the preview pane as an HTML fragment. */
export function previewPane(mtl: MtlPreview): string {
  const parts: string[] = ['<div class="preview-pane">'];
  if (mtl.formula === null) {
    parts.push('<p class="preview-empty">No formula yet.</p>');
  } else {
    parts.push(`<code class="mtl-formula">${esc(mtl.formula)}</code>`);
  }
  if (mtl.class !== null) {
    parts.push(`<span class="spec-class">${esc(mtl.class)}</span>`);
  }
  const badge = mtl.accepted ? "in fragment" : "outside fragment";
  parts.push(`<span class="fragment-badge" data-accepted="${mtl.accepted}">${badge}</span>`);
  if (mtl.diagnostics.length > 0) {
    const items = mtl.diagnostics.map((d) => `<li>${esc(d)}</li>`).join("");
    parts.push(`<ul class="preview-diagnostics">${items}</ul>`);
  }
  parts.push("</div>");
  return parts.join("\n");
}
