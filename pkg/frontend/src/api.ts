/** Typed fetch client for the mtlspec service.
 *
 * Every mutation carries the caller's last-seen revision; the server
 * answers a stale one with 409 plus the current revision, which is
 * surfaced here as ApiError.revision so callers can re-sync and replay.
 */

import type {
  ErrorBody,
  ExemplarsResponse,
  MonitorResponse,
  MtlPreview,
  OperatorPayload,
  PredicatePayload,
  SpecResource,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  override readonly name: string;
  readonly detail: string;
  readonly revision?: number;

  constructor(status: number, body: ErrorBody) {
    super(`${body.error}: ${body.detail}`);
    this.status = status;
    this.name = body.error;
    this.detail = body.detail;
    this.revision = body.revision;
  }
}

async function parseError(resp: Response): Promise<never> {
  let body: ErrorBody;
  try {
    body = (await resp.json()) as ErrorBody;
  } catch {
    body = { error: "BadResponse", detail: `HTTP ${resp.status}` };
  }
  throw new ApiError(resp.status, body);
}

export interface TemplatePlacement {
  parent?: string;
  after?: string;
  group: number;
}

export interface TemplatePatch {
  op?: OperatorPayload;
  predicate?: PredicatePayload | null;
  group?: number;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const resp = await fetch(this.baseUrl + path, init);
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/healthz");
  }

  createSpec(name?: string, description?: string): Promise<SpecResource> {
    const body: Record<string, string> = {};
    if (name !== undefined) body.name = name;
    if (description !== undefined) body.description = description;
    return this.request("POST", "/specs", body);
  }

  getSpec(id: string): Promise<SpecResource> {
    return this.request("GET", `/specs/${id}`);
  }

  deleteSpec(id: string, revision?: number): Promise<{ deleted: string }> {
    const query = revision === undefined ? "" : `?revision=${revision}`;
    return this.request("DELETE", `/specs/${id}${query}`);
  }

  addTemplate(id: string, revision: number, placement: TemplatePlacement): Promise<SpecResource> {
    return this.request("POST", `/specs/${id}/templates`, { ...placement, revision });
  }

  patchTemplate(
    id: string,
    templateId: string,
    revision: number,
    patch: TemplatePatch,
  ): Promise<SpecResource> {
    return this.request("PATCH", `/specs/${id}/templates/${templateId}`, {
      ...patch,
      revision,
    });
  }

  deleteTemplate(id: string, templateId: string, revision: number): Promise<SpecResource> {
    return this.request(
      "DELETE",
      `/specs/${id}/templates/${templateId}?revision=${revision}`,
    );
  }

  setNegated(id: string, revision: number, value: boolean): Promise<SpecResource> {
    return this.request("POST", `/specs/${id}/negated`, { value, revision });
  }

  getMtl(id: string, mode?: "strict" | "extended"): Promise<MtlPreview & { revision: number }> {
    const query = mode === undefined ? "" : `?mode=${mode}`;
    return this.request("GET", `/specs/${id}/mtl${query}`);
  }

  getExemplars(
    id: string,
    templateId: string,
    n: number,
    seed: number,
    negative = false,
  ): Promise<ExemplarsResponse> {
    const query = `?n=${n}&seed=${seed}&negative=${negative}`;
    return this.request("GET", `/specs/${id}/templates/${templateId}/exemplars${query}`);
  }

  monitor(
    formula: string,
    trace: { times: number[]; signals: Record<string, number[]> },
    at?: number,
  ): Promise<MonitorResponse> {
    const body: Record<string, unknown> = { formula, trace };
    if (at !== undefined) body.at = at;
    return this.request("POST", "/monitor", body);
  }
}
