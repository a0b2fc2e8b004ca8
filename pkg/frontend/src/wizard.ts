/** The authoring wizard: a fixed sequence of dialog steps.
 *
 * ChooseOperator -> FillTimingSentence -> ChooseDirection -> PickExemplar
 * -> Done. Each step stores exactly the data the next one needs, so the
 * machine refuses out-of-order transitions outright; user-input problems
 * (bad bounds, empty signal name) come back as inline errors instead.
 *
 * The pure machine knows nothing about the network; WizardSession binds
 * it to the HTTP client so every confirmed step round-trips through the
 * service and the server stays the single source of truth.
 */

import { ApiClient, ApiError, TemplatePlacement } from "./api.js";
import { submitTiming, timingSentence, type SlotError } from "./sentences.js";
import type {
  ExemplarsResponse,
  NodeDoc,
  OperatorKind,
  OperatorPayload,
  PredicatePayload,
  Relation,
  SpecDoc,
  SpecResource,
} from "./types.js";

export type WizardStep =
  | "ChooseOperator"
  | "FillTimingSentence"
  | "ChooseDirection"
  | "PickExemplar"
  | "Done";

export interface Draft {
  kind?: OperatorKind;
  op?: OperatorPayload;
  relation?: Relation;
  threshold?: number;
  signal?: string;
  exemplar?: { index: number; seed: number };
}

export interface WizardState {
  step: WizardStep;
  draft: Draft;
}

export class WizardError extends Error {}

function expectStep(state: WizardState, step: WizardStep): void {
  if (state.step !== step) {
    throw new WizardError(`step is ${state.step}, not ${step}`);
  }
}

export function startWizard(): WizardState {
  return { step: "ChooseOperator", draft: {} };
}

export function chooseOperator(state: WizardState, kind: OperatorKind): WizardState {
  expectStep(state, "ChooseOperator");
  return { step: "FillTimingSentence", draft: { kind } };
}

export type TimingResult =
  | { ok: true; state: WizardState }
  | { ok: false; errors: SlotError[] };

export function fillTiming(
  state: WizardState,
  values: ReadonlyArray<string | number>,
): TimingResult {
  expectStep(state, "FillTimingSentence");
  if (state.draft.kind === undefined) throw new WizardError("no operator chosen");
  const result = submitTiming(timingSentence(state.draft.kind), values);
  if (!result.ok) return result;
  return {
    ok: true,
    state: { step: "ChooseDirection", draft: { ...state.draft, op: result.op } },
  };
}

export interface Direction {
  signal: string;
  relation: Relation;
  threshold: number;
}

export type DirectionResult =
  | { ok: true; state: WizardState }
  | { ok: false; message: string };

const SIGNAL_NAME = /^[A-Za-z][A-Za-z0-9_]*$/;

export function chooseDirection(state: WizardState, direction: Direction): DirectionResult {
  expectStep(state, "ChooseDirection");
  if (!SIGNAL_NAME.test(direction.signal)) {
    return { ok: false, message: "signal names start with a letter and use letters, digits, underscore" };
  }
  if (!Number.isFinite(direction.threshold)) {
    return { ok: false, message: "threshold must be a finite number" };
  }
  return {
    ok: true,
    state: { step: "PickExemplar", draft: { ...state.draft, ...direction } },
  };
}

export function pickExemplar(state: WizardState, index: number, seed: number): WizardState {
  expectStep(state, "PickExemplar");
  return { step: "Done", draft: { ...state.draft, exemplar: { index, seed } } };
}

/** What a click on the rendered timeline means for template placement. */
export type ClickTarget =
  | { kind: "signal"; template: string }
  | { kind: "row"; template: string }
  | { kind: "background" };

/** Map a click to the placement of the template the wizard will create.
 *
 * Clicking a template's signal area starts the nested flow: the new
 * template becomes a child with the next group number, which the
 * translator renders as an implication ("whenever the parent holds...").
 * Clicking anywhere else appends a root sibling in a fresh group.
 */
export function placementForClick(spec: SpecDoc, target: ClickTarget): TemplatePlacement {
  if (target.kind === "signal" || target.kind === "row") {
    const parent = spec.nodes.find((n) => n.id === target.template);
    if (parent === undefined) return { group: 1 };
    if (target.kind === "signal") {
      const children = spec.nodes.filter((n) => n.parent === parent.id);
      const last = children[children.length - 1];
      return { parent: parent.id, group: (last ?? parent).group + 1 };
    }
  }
  const roots = spec.nodes.filter((n) => n.parent === undefined);
  const last = roots[roots.length - 1];
  return { group: last === undefined ? 1 : last.group + 1 };
}

/** One wizard run bound to a spec on the server.
 *
 * Holds the latest resource the service returned; the revision inside it
 * rides along on every mutation. A stale-revision conflict (409) is
 * resolved by adopting the server's current revision and replaying the
 * one action once, which matches a single user retrying their last click.
 */
export class WizardSession {
  state: WizardState;
  resource: SpecResource;
  templateId: string | null = null;
  seed: number;

  constructor(
    readonly client: ApiClient,
    resource: SpecResource,
    seed = 0,
  ) {
    this.state = startWizard();
    this.resource = resource;
    this.seed = seed;
  }

  get specId(): string {
    return this.resource.id;
  }

  get revision(): number {
    return this.resource.revision;
  }

  /** The preview pane content: always the server's own rendering. */
  get preview(): string {
    return this.resource.mtl.formula ?? "";
  }

  private async mutate(
    action: (revision: number) => Promise<SpecResource>,
  ): Promise<SpecResource> {
    try {
      this.resource = await action(this.revision);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409 && err.revision !== undefined) {
        this.resource = await action(err.revision);
      } else {
        throw err;
      }
    }
    return this.resource;
  }

  /** Create the template this wizard run will fill in. */
  async begin(placement: TemplatePlacement): Promise<string> {
    const resource = await this.mutate((rev) =>
      this.client.addTemplate(this.specId, rev, placement),
    );
    if (resource.template === undefined) {
      throw new WizardError("service did not name the new template");
    }
    this.templateId = resource.template;
    this.state = startWizard();
    return this.templateId;
  }

  private needTemplate(): string {
    if (this.templateId === null) throw new WizardError("begin() first");
    return this.templateId;
  }

  chooseOperator(kind: OperatorKind): void {
    this.state = chooseOperator(this.state, kind);
  }

  /** Submit the timing blanks; on success the operator is persisted. */
  async fillTiming(values: ReadonlyArray<string | number>): Promise<TimingResult> {
    const result = fillTiming(this.state, values);
    if (!result.ok) return result;
    const op = result.state.draft.op;
    if (op === undefined) throw new WizardError("timing produced no operator");
    await this.mutate((rev) =>
      this.client.patchTemplate(this.specId, this.needTemplate(), rev, { op }),
    );
    this.state = result.state;
    return result;
  }

  /** Submit the predicate direction; on success it is persisted. */
  async chooseDirection(direction: Direction): Promise<DirectionResult> {
    const result = chooseDirection(this.state, direction);
    if (!result.ok) return result;
    const predicate: PredicatePayload = {
      signal: direction.signal,
      relation: direction.relation,
      threshold: direction.threshold,
    };
    await this.mutate((rev) =>
      this.client.patchTemplate(this.specId, this.needTemplate(), rev, { predicate }),
    );
    this.state = result.state;
    return result;
  }

  /** Fetch the selectable exemplar signals for the draft template. */
  fetchExemplars(n = 3, negative = false): Promise<ExemplarsResponse> {
    return this.client.getExemplars(this.specId, this.needTemplate(), n, this.seed, negative);
  }

  pickExemplar(index: number): void {
    this.state = pickExemplar(this.state, index, this.seed);
  }

  /** Finish the run and hand back the created template's id. */
  finish(): string {
    if (this.state.step !== "Done") {
      throw new WizardError(`wizard is still at ${this.state.step}`);
    }
    return this.needTemplate();
  }

  /** Multi-select grouping: give the chosen templates one group number. */
  async groupTemplates(templateIds: string[], group: number): Promise<SpecResource> {
    let resource = this.resource;
    for (const templateId of templateIds) {
      resource = await this.mutate((rev) =>
        this.client.patchTemplate(this.specId, templateId, rev, { group }),
      );
    }
    return resource;
  }

  /** Re-fetch everything from the server (forced refresh). */
  async refresh(): Promise<SpecResource> {
    this.resource = await this.client.getSpec(this.specId);
    return this.resource;
  }
}

export function nodeLabel(node: NodeDoc): string {
  if (node.predicate === undefined) return "(no condition yet)";
  const { signal, relation, threshold } = node.predicate;
  return `${signal} ${relation} ${threshold}`;
}
