import { describe, expect, it } from "vitest";
import { CARD_H, CARD_W, exemplarCard, pickerHtml, retryCard } from "../src/sparkline.js";
import type { CardMeta } from "../src/sparkline.js";
import type { Exemplar, ExemplarsResponse } from "../src/types.js";

const EXEMPLAR: Exemplar = {
  index: 0,
  archetype: "hold",
  times: [0, 1, 2, 3, 4],
  values: [10, 12, 11, 13, 12],
};

const META: CardMeta = {
  threshold: 15,
  relation: "<",
  op: { kind: "always", outer: [0, 3] },
  seed: 7,
};

describe("exemplar cards", () => {
  it("draws the curve, the threshold line, and the operator window", () => {
    const svg = exemplarCard(EXEMPLAR, META);
    expect(svg).toContain('class="curve"');
    expect(svg).toContain('class="threshold"');
    expect(svg).toContain('class="card-shade-outer"');
    expect(svg).toContain(`width="${CARD_W}"`);
    expect(svg).toContain(`height="${CARD_H}"`);
  });

  it("carries index, seed, and archetype as data attributes", () => {
    const svg = exemplarCard(EXEMPLAR, META);
    expect(svg).toContain('data-index="0"');
    expect(svg).toContain('data-seed="7"');
    expect(svg).toContain('data-archetype="hold"');
  });

  it("a two-interval operator shades two regions", () => {
    const svg = exemplarCard(EXEMPLAR, {
      ...META,
      op: { kind: "eventually_always", outer: [0, 2], inner: [0, 1] },
    });
    expect(svg).toContain('class="card-shade-outer"');
    expect(svg).toContain('class="card-shade-inner"');
  });

  it("a flat signal still renders without dividing by zero", () => {
    const flat: Exemplar = { index: 1, archetype: "hold", times: [0, 1], values: [15, 15] };
    const svg = exemplarCard(flat, META);
    expect(svg).toContain("polyline");
    expect(svg).not.toContain("NaN");
  });

  it("threshold line sits between min and max of the plot", () => {
    const svg = exemplarCard(EXEMPLAR, META);
    const match = svg.match(/class="threshold" x1="[\d.]+" y1="([\d.]+)"/);
    expect(match).not.toBeNull();
    const y = Number(match?.[1]);
    expect(y).toBeGreaterThan(0);
    expect(y).toBeLessThan(CARD_H);
  });
});

describe("the picker", () => {
  const RESPONSE: ExemplarsResponse = {
    template: "t1",
    formula: "[]_[0,3](x < 15)",
    signal: "x",
    relation: "<",
    threshold: 15,
    seed: 7,
    negative: false,
    exemplars: [EXEMPLAR, { ...EXEMPLAR, index: 1, archetype: "dip" }],
  };

  it("renders one card per exemplar", () => {
    const html = pickerHtml(RESPONSE, { kind: "always", outer: [0, 3] });
    const cards = html.match(/class="exemplar-card"/g) ?? [];
    expect(cards).toHaveLength(2);
    expect(html).toContain('data-signal="x"');
  });

  it("a service failure renders the retry card instead", () => {
    const html = retryCard("exemplar request failed");
    expect(html).toContain('class="retry-card"');
    expect(html).toContain("exemplar request failed");
    expect(html).toContain('class="retry"');
  });

  it("retry messages are escaped", () => {
    expect(retryCard("<script>")).toContain("&lt;script&gt;");
  });
});
