import { describe, expect, it } from "vitest";
import { sentenceText, submitTiming, timingSentence } from "../src/sentences.js";
import type { OperatorKind } from "../src/types.js";

const SLOT_COUNTS: Array<[OperatorKind, number]> = [
  ["now", 0],
  ["always", 2],
  ["at_least_once", 2],
  ["eventually_always", 4],
  ["repeatedly_often_and_finally", 4],
];

describe("timing sentences", () => {
  it.each(SLOT_COUNTS)("%s exposes %d blanks", (kind, count) => {
    expect(timingSentence(kind).slots).toHaveLength(count);
  });

  it("renders blanks as underscores", () => {
    const text = sentenceText(timingSentence("always"));
    expect(text).toBe("Always, between _ and _ seconds, the condition stays true.");
  });

  it("the two-phase sentence names both windows", () => {
    const text = sentenceText(timingSentence("eventually_always"));
    expect(text).toBe(
      "Eventually, between _ and _ seconds, the signal will become true, " +
        "and from that point on, will stay true in the next _ to _ seconds.",
    );
  });

  it("every sentence part count matches its slot count", () => {
    for (const [kind] of SLOT_COUNTS) {
      const sentence = timingSentence(kind);
      expect(sentence.parts).toHaveLength(sentence.slots.length + 1);
    }
  });
});

describe("submitting filled slots", () => {
  it("builds a single-interval operator", () => {
    const result = submitTiming(timingSentence("always"), ["0", "40"]);
    expect(result).toEqual({ ok: true, op: { kind: "always", outer: [0, 40] } });
  });

  it("builds a two-interval operator", () => {
    const result = submitTiming(timingSentence("eventually_always"), [5, 30, 0, 10]);
    expect(result).toEqual({
      ok: true,
      op: { kind: "eventually_always", outer: [5, 30], inner: [0, 10] },
    });
  });

  it("the instantaneous sentence needs no values", () => {
    expect(submitTiming(timingSentence("now"), [])).toEqual({
      ok: true,
      op: { kind: "now" },
    });
  });

  it("an ill-ordered interval is blocked inline on the high slot", () => {
    const result = submitTiming(timingSentence("always"), ["5", "2"]);
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.errors).toHaveLength(1);
      expect(result.errors[0]).toEqual({
        slot: 1,
        message: "the second bound must not be smaller than the first",
      });
    }
  });

  it("an ill-ordered inner interval points at the fourth slot", () => {
    const result = submitTiming(timingSentence("repeatedly_often_and_finally"), [0, 10, 9, 3]);
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.errors[0]?.slot).toBe(3);
  });

  it("empty and non-numeric slots are flagged individually", () => {
    const result = submitTiming(timingSentence("eventually_always"), ["", "abc", "1", "2"]);
    expect(result.ok).toBe(false);
    if (!result.ok) {
      expect(result.errors.map((e) => e.slot)).toEqual([0, 1]);
      for (const err of result.errors) expect(err.message).toBe("enter a number of seconds");
    }
  });

  it("negative seconds are rejected", () => {
    const result = submitTiming(timingSentence("always"), ["-1", "4"]);
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.errors[0]?.message).toBe("seconds cannot be negative");
  });

  it("a value count mismatch is reported before validation", () => {
    const result = submitTiming(timingSentence("always"), ["1"]);
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.errors[0]?.message).toContain("expected 2 values");
  });

  it("equal bounds are allowed", () => {
    const result = submitTiming(timingSentence("at_least_once"), ["7", "7"]);
    expect(result).toEqual({ ok: true, op: { kind: "at_least_once", outer: [7, 7] } });
  });
});
