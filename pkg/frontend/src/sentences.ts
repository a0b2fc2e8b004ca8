/** Fill-in-the-blanks timing sentences, one per operator kind.
 *
 * Each sentence alternates fixed text with input slots; a slot is bound
 * to one interval bound of the resulting operator. Submitting the filled
 * slots either yields a valid operator payload or a per-slot inline
 * error, so an ill-ordered interval never leaves the form.
 */

import type { Bounds, OperatorKind, OperatorPayload } from "./types.js";

export interface SentenceSlot {
  /** which interval the slot feeds */
  interval: "outer" | "inner";
  /** which end of that interval */
  bound: "lo" | "hi";
  placeholder: string;
}

export interface TimingSentence {
  kind: OperatorKind;
  /** fixed text fragments; slots sit between consecutive parts */
  parts: string[];
  slots: SentenceSlot[];
}

const OUTER_LO: SentenceSlot = { interval: "outer", bound: "lo", placeholder: "seconds" };
const OUTER_HI: SentenceSlot = { interval: "outer", bound: "hi", placeholder: "seconds" };
const INNER_LO: SentenceSlot = { interval: "inner", bound: "lo", placeholder: "seconds" };
const INNER_HI: SentenceSlot = { interval: "inner", bound: "hi", placeholder: "seconds" };

const SENTENCES: Record<OperatorKind, TimingSentence> = {
  now: {
    kind: "now",
    parts: ["Right now, the condition holds."],
    slots: [],
  },
  always: {
    kind: "always",
    parts: ["Always, between ", " and ", " seconds, the condition stays true."],
    slots: [OUTER_LO, OUTER_HI],
  },
  at_least_once: {
    kind: "at_least_once",
    parts: ["At least once, between ", " and ", " seconds, the condition becomes true."],
    slots: [OUTER_LO, OUTER_HI],
  },
  eventually_always: {
    kind: "eventually_always",
    parts: [
      "Eventually, between ",
      " and ",
      " seconds, the signal will become true, and from that point on, will stay true in the next ",
      " to ",
      " seconds.",
    ],
    slots: [OUTER_LO, OUTER_HI, INNER_LO, INNER_HI],
  },
  repeatedly_often_and_finally: {
    kind: "repeatedly_often_and_finally",
    parts: [
      "Repeatedly, between ",
      " and ",
      " seconds, the signal will become true again within ",
      " to ",
      " seconds each time.",
    ],
    slots: [OUTER_LO, OUTER_HI, INNER_LO, INNER_HI],
  },
};

export function timingSentence(kind: OperatorKind): TimingSentence {
  return SENTENCES[kind];
}

/** Sentence with slots shown as underscores, for previews and tests. */
export function sentenceText(sentence: TimingSentence): string {
  const out: string[] = [];
  sentence.parts.forEach((part, i) => {
    out.push(part);
    if (i < sentence.slots.length) out.push("_");
  });
  return out.join("");
}

export interface SlotError {
  slot: number;
  message: string;
}

export type SubmitResult =
  | { ok: true; op: OperatorPayload }
  | { ok: false; errors: SlotError[] };

/** Validate filled slots and build the operator payload.
 *
 * Inline rules: every slot needs a finite non-negative number, and each
 * interval's low bound must not exceed its high bound. Errors are
 * reported per slot; the operator is only produced when there are none.
 */
export function submitTiming(sentence: TimingSentence, values: ReadonlyArray<string | number>): SubmitResult {
  const errors: SlotError[] = [];
  if (values.length !== sentence.slots.length) {
    return {
      ok: false,
      errors: [
        {
          slot: Math.min(values.length, sentence.slots.length),
          message: `expected ${sentence.slots.length} values, got ${values.length}`,
        },
      ],
    };
  }

  const bounds: { outer: Partial<Record<"lo" | "hi", number>>; inner: Partial<Record<"lo" | "hi", number>> } = {
    outer: {},
    inner: {},
  };
  sentence.slots.forEach((slot, i) => {
    const raw = values[i];
    const num = typeof raw === "number" ? raw : Number(raw);
    if (raw === "" || raw === undefined || Number.isNaN(num) || !Number.isFinite(num)) {
      errors.push({ slot: i, message: "enter a number of seconds" });
      return;
    }
    if (num < 0) {
      errors.push({ slot: i, message: "seconds cannot be negative" });
      return;
    }
    bounds[slot.interval][slot.bound] = num;
  });

  for (const name of ["outer", "inner"] as const) {
    const { lo, hi } = bounds[name];
    if (lo !== undefined && hi !== undefined && lo > hi) {
      const slot = sentence.slots.findIndex((s) => s.interval === name && s.bound === "hi");
      errors.push({ slot, message: "the second bound must not be smaller than the first" });
    }
  }

  if (errors.length > 0) return { ok: false, errors };

  const op: OperatorPayload = { kind: sentence.kind };
  if (bounds.outer.lo !== undefined && bounds.outer.hi !== undefined) {
    op.outer = [bounds.outer.lo, bounds.outer.hi] as Bounds;
  }
  if (bounds.inner.lo !== undefined && bounds.inner.hi !== undefined) {
    op.inner = [bounds.inner.lo, bounds.inner.hi] as Bounds;
  }
  return { ok: true, op };
}
