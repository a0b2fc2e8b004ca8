/** JSON shapes exchanged with the mtlspec HTTP service. */

export type OperatorKind =
  | "now"
  | "always"
  | "at_least_once"
  | "eventually_always"
  | "repeatedly_often_and_finally";

export type Relation = "<" | ">" | "<=" | ">=";

export type Bounds = [number, number];

export interface OperatorPayload {
  kind: OperatorKind;
  outer?: Bounds;
  inner?: Bounds;
}

export interface PredicatePayload {
  signal: string;
  relation: Relation;
  threshold: number;
}

export interface NodeDoc {
  id: string;
  parent?: string;
  order: number;
  group: number;
  op: OperatorPayload;
  predicate?: PredicatePayload;
}

export interface SpecDoc {
  version: number;
  name: string;
  description: string;
  negated: boolean;
  nodes: NodeDoc[];
}

export interface MtlPreview {
  mode: string;
  formula: string | null;
  class: string | null;
  negated: boolean;
  accepted: boolean;
  diagnostics: string[];
}

/** Body shared by every spec-returning endpoint. */
export interface SpecResource {
  id: string;
  revision: number;
  spec: SpecDoc;
  mtl: MtlPreview;
  template?: string;
  deleted?: string;
}

export interface Exemplar {
  index: number;
  archetype: string;
  times: number[];
  values: number[];
}

export interface ExemplarsResponse {
  template: string;
  formula: string;
  signal: string;
  relation: Relation;
  threshold: number;
  seed: number;
  negative: boolean;
  exemplars: Exemplar[];
}

export interface MonitorResponse {
  result: boolean;
  horizon: number;
}

export interface ErrorBody {
  error: string;
  detail: string;
  revision?: number;
  required?: number;
  available?: number;
}
