/** Exemplar picker cards: small seeded signal previews.
 *
 * Each card draws one candidate signal as a sparkline with the template's
 * threshold as a dashed horizontal line and the operator windows shaded
 * behind the curve, so the user can see at a glance where the condition
 * must hold. Cards carry their index and the generator seed as data
 * attributes; picking one is just reading those back.
 */

import { operatorSpans } from "./timeline.js";
import type { Exemplar, ExemplarsResponse, OperatorPayload, Relation } from "./types.js";

export const CARD_W = 220;
export const CARD_H = 96;
const PAD = 8;

export interface CardMeta {
  threshold: number;
  relation: Relation;
  op: OperatorPayload;
  seed: number;
}

function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

const CARD_STYLE = `
  .card-bg { fill: #ffffff; stroke: #c9ccd1; }
  .card-shade-outer { fill: #9ec5e8; fill-opacity: 0.45; }
  .card-shade-inner { fill: #f2c894; fill-opacity: 0.6; }
  .curve { fill: none; stroke: #2563eb; stroke-width: 1.5; }
  .threshold { stroke: #d93025; stroke-width: 1; stroke-dasharray: 4 3; }
  .card-caption { font: 10px sans-serif; fill: #4b5563; }
`;

/** Render one exemplar as a selectable SVG card. */
export function exemplarCard(exemplar: Exemplar, meta: CardMeta): string {
  const times = exemplar.times;
  const values = exemplar.values;
  const tMax = Math.max(times[times.length - 1] ?? 1, 1);
  let vMin = Math.min(meta.threshold, ...values);
  let vMax = Math.max(meta.threshold, ...values);
  if (vMax - vMin < 1e-9) {
    vMin -= 1;
    vMax += 1;
  }
  const plotW = CARD_W - 2 * PAD;
  const plotH = CARD_H - 2 * PAD - 14;
  const sx = (t: number): number => PAD + (t / tMax) * plotW;
  const sy = (v: number): number => PAD + (1 - (v - vMin) / (vMax - vMin)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" class="exemplar-card" ` +
      `data-index="${exemplar.index}" data-seed="${meta.seed}" ` +
      `data-archetype="${esc(exemplar.archetype)}" ` +
      `width="${CARD_W}" height="${CARD_H}" viewBox="0 0 ${CARD_W} ${CARD_H}">`,
  );
  parts.push(`<style>${CARD_STYLE}</style>`);
  parts.push(
    `<rect class="card-bg" x="0.5" y="0.5" width="${CARD_W - 1}" height="${CARD_H - 1}" rx="6"/>`,
  );

  for (const span of operatorSpans(meta.op)) {
    const x0 = sx(Math.min(span.lo, tMax));
    const x1 = sx(Math.min(span.hi, tMax));
    parts.push(
      `<rect class="card-shade-${span.style}" x="${x0}" y="${PAD}" ` +
        `width="${Math.max(x1 - x0, 1)}" height="${plotH}"/>`,
    );
  }

  const ty = sy(meta.threshold);
  parts.push(`<line class="threshold" x1="${PAD}" y1="${ty}" x2="${PAD + plotW}" y2="${ty}"/>`);

  const pts = times.map((t, i) => `${sx(t)},${sy(values[i] ?? 0)}`).join(" ");
  parts.push(`<polyline class="curve" points="${pts}"/>`);

  parts.push(
    `<text class="card-caption" x="${PAD}" y="${CARD_H - 6}">` +
      `${esc(exemplar.archetype)} #${exemplar.index}</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n");
}

/** Render the whole picker: a row of cards for the fetched exemplars. */
export function pickerHtml(response: ExemplarsResponse, op: OperatorPayload): string {
  const meta: CardMeta = {
    threshold: response.threshold,
    relation: response.relation,
    op,
    seed: response.seed,
  };
  const cards = response.exemplars.map((ex) => exemplarCard(ex, meta)).join("\n");
  return `<div class="exemplar-picker" data-signal="${esc(response.signal)}">\n${cards}\n</div>`;
}

/** Shown in place of the picker when the exemplar request fails. */
export function retryCard(message: string): string {
  return (
    `<div class="retry-card" role="alert">` +
    `<p class="retry-message">${esc(message)}</p>` +
    `<button type="button" class="retry">Try again</button>` +
    `</div>`
  );
}
