/** Thin fetch client for the scenario service. One method per endpoint. */

import type {
  EvaluationJson,
  ModelJson,
  PlanJson,
  ScenarioJson,
  ServiceErrorBody,
  StrategyJson,
  TargetJson,
} from "./types.js";

export class ServiceError extends Error {
  readonly code: string;
  readonly status: number;
  readonly detail: Record<string, unknown>;

  constructor(status: number, body: ServiceErrorBody["error"]) {
    super(body.message);
    this.code = body.code;
    this.status = status;
    this.detail = body.detail ?? {};
  }
}

export interface WhatIfOverrides {
  target?: TargetJson;
  strategy?: StrategyJson;
  horizon_years?: number;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    options: { ifMatch?: number; signal?: AbortSignal } = {},
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["content-type"] = "application/json";
    if (options.ifMatch !== undefined) headers["if-match"] = String(options.ifMatch);
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
      signal: options.signal,
    });
    const text = await response.text();
    if (!response.ok) {
      let parsed: ServiceErrorBody | null = null;
      try {
        parsed = JSON.parse(text) as ServiceErrorBody;
      } catch {
        /* non-JSON error body */
      }
      throw new ServiceError(
        response.status,
        parsed?.error ?? { code: "HttpError", message: text || response.statusText, detail: {} },
      );
    }
    return JSON.parse(text) as T;
  }

  createDataset(csv: string): Promise<{ id: string }> {
    return this.request("POST", "/datasets", { csv });
  }

  getDataset(id: string): Promise<{ id: string; csv: string }> {
    return this.request("GET", `/datasets/${id}`);
  }

  estimateModel(datasetId: string, crts: boolean): Promise<ModelJson> {
    return this.request("POST", "/models/estimate", { dataset_id: datasetId, crts });
  }

  createScenario(body: Record<string, unknown>): Promise<ScenarioJson> {
    return this.request("POST", "/scenarios", body);
  }

  getScenario(id: string): Promise<ScenarioJson> {
    return this.request("GET", `/scenarios/${id}`);
  }

  patchScenario(
    id: string,
    changes: Record<string, unknown>,
    version: number,
  ): Promise<ScenarioJson> {
    return this.request("PATCH", `/scenarios/${id}`, changes, { ifMatch: version });
  }

  computePlan(id: string): Promise<PlanJson> {
    return this.request("POST", `/scenarios/${id}/plan`);
  }

  whatIf(id: string, overrides: WhatIfOverrides, signal?: AbortSignal): Promise<PlanJson> {
    return this.request("POST", `/scenarios/${id}/what-if`, overrides, { signal });
  }

  submitRealized(
    id: string,
    body: { year: number; input_levels: Record<string, number>; output_level: number },
  ): Promise<EvaluationJson> {
    return this.request("POST", `/scenarios/${id}/realized`, body);
  }

  reportUrl(id: string, format: "csv" | "json"): string {
    return `${this.baseUrl}/scenarios/${id}/report?format=${format}`;
  }
}
