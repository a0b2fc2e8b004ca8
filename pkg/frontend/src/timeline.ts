/** Timeline canvas: one horizontal track per template.
 *
 * Templates stack vertically in sibling order; a child template is
 * indented one tab under its parent with a connector line, so nesting
 * reads top to bottom like an outline. Operator windows appear as shaded
 * spans on the track (two-interval operators get two visually distinct
 * shadings, one for the outer window and one for the follow-up window),
 * and adjacent siblings that share a group number are wrapped in a bold
 * box, which is the visual cue for "these combine by AND".
 *
 * The module is split into a pure layout pass (geometry only, easy to
 * test), an SVG string renderer, and a hit test that turns a click point
 * back into the template whose signal area was hit.
 */

import { nodeLabel, type ClickTarget } from "./wizard.js";
import type { NodeDoc, OperatorPayload, SpecDoc } from "./types.js";

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export type ShadeStyle = "outer" | "inner";

export interface Shading {
  rect: Rect;
  style: ShadeStyle;
}

export interface TimelineRow {
  template: NodeDoc;
  depth: number;
  y: number;
  labelArea: Rect;
  signalArea: Rect;
  windows: Shading[];
  label: string;
  opLabel: string;
}

export interface GroupBox {
  rect: Rect;
  group: number;
  templates: string[];
}

export interface Connector {
  from: string;
  to: string;
  points: Array<[number, number]>;
}

export interface TimelineLayout {
  width: number;
  height: number;
  zoom: number;
  trackX: number;
  extent: number;
  rows: TimelineRow[];
  groups: GroupBox[];
  connectors: Connector[];
  placeholder: string | null;
  banner: string | null;
}

export const ROW_H = 56;
export const ROW_GAP = 12;
export const INDENT = 28;
export const GUTTER = 170;
export const TOP_PAD = 20;
export const BANNER_H = 36;
const RIGHT_PAD = 24;
const MIN_EXTENT = 10;

export interface OperatorSpan {
  lo: number;
  hi: number;
  style: ShadeStyle;
}

/** Operator windows in seconds, relative to the track origin. */
export function operatorSpans(op: OperatorPayload): OperatorSpan[] {
  if (op.outer === undefined) return [];
  const [a, b] = op.outer;
  const spans: OperatorSpan[] = [{ lo: a, hi: b, style: "outer" }];
  if (op.inner !== undefined) {
    const [c, d] = op.inner;
    spans.push({ lo: a + c, hi: b + d, style: "inner" });
  }
  return spans;
}

const OP_WORDS: Record<string, string> = {
  now: "now",
  always: "always",
  at_least_once: "at least once",
  eventually_always: "eventually, then always",
  repeatedly_often_and_finally: "repeatedly",
};

export function operatorLabel(op: OperatorPayload): string {
  const word = OP_WORDS[op.kind] ?? op.kind;
  const parts: string[] = [word];
  if (op.outer !== undefined) parts.push(`[${op.outer[0]}, ${op.outer[1]}]`);
  if (op.inner !== undefined) parts.push(`+ [${op.inner[0]}, ${op.inner[1]}]`);
  return parts.join(" ");
}

interface OrderedNode {
  node: NodeDoc;
  depth: number;
}

/** Preorder walk: each parent directly above its children, siblings by order. */
function orderedNodes(spec: SpecDoc): OrderedNode[] {
  const byParent = new Map<string | undefined, NodeDoc[]>();
  for (const node of spec.nodes) {
    const key = node.parent;
    const list = byParent.get(key);
    if (list === undefined) byParent.set(key, [node]);
    else list.push(node);
  }
  for (const list of byParent.values()) list.sort((a, b) => a.order - b.order);
  const out: OrderedNode[] = [];
  const walk = (parent: string | undefined, depth: number): void => {
    for (const node of byParent.get(parent) ?? []) {
      out.push({ node, depth });
      walk(node.id, depth + 1);
    }
  };
  walk(undefined, 0);
  return out;
}

export interface LayoutOptions {
  diagnostics?: string[];
}

export function layoutTimeline(
  spec: SpecDoc,
  zoom: number,
  options: LayoutOptions = {},
): TimelineLayout {
  const diagnostics = options.diagnostics ?? [];
  const banner = diagnostics.length > 0 ? diagnostics.join("; ") : null;
  const top = TOP_PAD + (banner === null ? 0 : BANNER_H);
  const ordered = orderedNodes(spec);

  let extent = MIN_EXTENT;
  for (const { node } of ordered) {
    for (const span of operatorSpans(node.op)) extent = Math.max(extent, span.hi);
  }
  extent += 2;

  const trackX = GUTTER;
  const width = trackX + extent * zoom + RIGHT_PAD;

  if (ordered.length === 0) {
    return {
      width,
      height: top + 3 * ROW_H,
      zoom,
      trackX,
      extent,
      rows: [],
      groups: [],
      connectors: [],
      placeholder: "add template",
      banner,
    };
  }

  const rows: TimelineRow[] = [];
  const rowByid = new Map<string, TimelineRow>();
  ordered.forEach(({ node, depth }, i) => {
    const y = top + i * (ROW_H + ROW_GAP);
    const x = 8 + depth * INDENT;
    const row: TimelineRow = {
      template: node,
      depth,
      y,
      labelArea: { x, y, w: trackX - x - 8, h: ROW_H },
      signalArea: { x: trackX, y, w: extent * zoom, h: ROW_H },
      windows: operatorSpans(node.op).map((span) => ({
        style: span.style,
        rect: {
          x: trackX + span.lo * zoom,
          y: y + 4,
          w: Math.max((span.hi - span.lo) * zoom, 2),
          h: ROW_H - 8,
        },
      })),
      label: nodeLabel(node),
      opLabel: operatorLabel(node.op),
    };
    rows.push(row);
    rowByid.set(node.id, row);
  });

  const connectors: Connector[] = [];
  for (const row of rows) {
    const parentId = row.template.parent;
    if (parentId === undefined) continue;
    const parent = rowByid.get(parentId);
    if (parent === undefined) continue;
    const px = parent.labelArea.x + 10;
    connectors.push({
      from: parentId,
      to: row.template.id,
      points: [
        [px, parent.y + ROW_H],
        [px, row.y + ROW_H / 2],
        [row.labelArea.x, row.y + ROW_H / 2],
      ],
    });
  }

  const groups: GroupBox[] = [];
  const siblingLists = new Map<string | undefined, TimelineRow[]>();
  for (const row of rows) {
    const key = row.template.parent;
    const list = siblingLists.get(key);
    if (list === undefined) siblingLists.set(key, [row]);
    else list.push(row);
  }
  for (const list of siblingLists.values()) {
    list.sort((a, b) => a.template.order - b.template.order);
    let start = 0;
    while (start < list.length) {
      let end = start + 1;
      const startRow = list[start];
      if (startRow === undefined) break;
      while (end < list.length && list[end]?.template.group === startRow.template.group) {
        end += 1;
      }
      if (end - start >= 2) {
        const members = list.slice(start, end);
        const first = members[0];
        const last = members[members.length - 1];
        if (first !== undefined && last !== undefined) {
          const x = Math.min(...members.map((r) => r.labelArea.x)) - 5;
          groups.push({
            group: startRow.template.group,
            templates: members.map((r) => r.template.id),
            rect: {
              x,
              y: first.y - 5,
              w: trackX + extent * zoom - x + 10,
              h: last.y + ROW_H - first.y + 10,
            },
          });
        }
      }
      start = end;
    }
  }

  const lastRow = rows[rows.length - 1];
  const height = (lastRow === undefined ? top : lastRow.y + ROW_H) + TOP_PAD;
  return {
    width,
    height,
    zoom,
    trackX,
    extent,
    rows,
    groups,
    connectors,
    placeholder: null,
    banner,
  };
}

function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

function rectTag(rect: Rect, cls: string, extra = ""): string {
  return (
    `<rect class="${cls}" x="${rect.x}" y="${rect.y}" ` +
    `width="${rect.w}" height="${rect.h}"${extra}/>`
  );
}

const STYLE = `
  .track { fill: #f5f6f8; stroke: #c9ccd1; }
  .shade-outer { fill: #9ec5e8; fill-opacity: 0.75; }
  .shade-inner { fill: #f2c894; fill-opacity: 0.9; stroke: #c98a2b; stroke-dasharray: 3 2; }
  .group-box { fill: none; stroke: #1f2430; stroke-width: 3; }
  .connector { fill: none; stroke: #6b7280; stroke-width: 1.5; }
  .label { font: 12px sans-serif; fill: #1f2430; }
  .op-label { font: 11px sans-serif; fill: #4b5563; }
  .tick { stroke: #d8dadf; }
  .tick-label { font: 10px sans-serif; fill: #8a8f98; }
  .placeholder { font: italic 14px sans-serif; fill: #8a8f98; }
  .banner { fill: #fdecea; stroke: #d93025; }
  .banner-text { font: 12px sans-serif; fill: #a50e0e; }
`;

/** Render a layout to a self-contained SVG document string. */
export function renderTimeline(layout: TimelineLayout): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${layout.width}" ` +
      `height="${layout.height}" viewBox="0 0 ${layout.width} ${layout.height}">`,
  );
  parts.push(`<style>${STYLE}</style>`);

  if (layout.banner !== null) {
    parts.push(
      rectTag({ x: 4, y: 4, w: layout.width - 8, h: BANNER_H - 8 }, "banner"),
    );
    parts.push(
      `<text class="banner-text" x="12" y="${4 + (BANNER_H - 8) / 2 + 4}">` +
        `${esc(layout.banner)}</text>`,
    );
  }

  if (layout.placeholder !== null) {
    parts.push(
      `<text class="placeholder" x="${layout.width / 2}" y="${layout.height / 2}" ` +
        `text-anchor="middle">${esc(layout.placeholder)}</text>`,
    );
    parts.push("</svg>");
    return parts.join("\n");
  }

  const tickStep = layout.extent > 60 ? 20 : 10;
  for (let t = 0; t <= layout.extent; t += tickStep) {
    const x = layout.trackX + t * layout.zoom;
    parts.push(
      `<line class="tick" x1="${x}" y1="${TOP_PAD - 6}" x2="${x}" y2="${layout.height - 8}"/>`,
    );
    parts.push(`<text class="tick-label" x="${x + 2}" y="${TOP_PAD + 2}">${t}s</text>`);
  }

  for (const conn of layout.connectors) {
    const pts = conn.points.map(([x, y]) => `${x},${y}`).join(" ");
    parts.push(`<polyline class="connector" points="${pts}"/>`);
  }

  for (const row of layout.rows) {
    const id = esc(row.template.id);
    parts.push(`<g class="template-row" data-template="${id}">`);
    parts.push(rectTag(row.signalArea, "track", ` data-signal="${id}"`));
    for (const shading of row.windows) {
      parts.push(rectTag(shading.rect, `shade-${shading.style}`));
    }
    parts.push(
      `<text class="label" x="${row.labelArea.x}" y="${row.y + 22}">${esc(row.label)}</text>`,
    );
    parts.push(
      `<text class="op-label" x="${row.labelArea.x}" y="${row.y + 38}">` +
        `${esc(row.opLabel)}</text>`,
    );
    parts.push("</g>");
  }

  for (const box of layout.groups) {
    parts.push(rectTag(box.rect, "group-box", ` data-group="${box.group}"`));
  }

  parts.push("</svg>");
  return parts.join("\n");
}

function contains(rect: Rect, x: number, y: number): boolean {
  return x >= rect.x && x <= rect.x + rect.w && y >= rect.y && y <= rect.y + rect.h;
}

/** Resolve a click point to what it means for authoring. */
export function hitTest(layout: TimelineLayout, x: number, y: number): ClickTarget {
  for (const row of layout.rows) {
    if (contains(row.signalArea, x, y)) {
      return { kind: "signal", template: row.template.id };
    }
    if (contains(row.labelArea, x, y)) {
      return { kind: "row", template: row.template.id };
    }
  }
  return { kind: "background" };
}
