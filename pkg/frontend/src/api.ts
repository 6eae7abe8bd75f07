import type { ApplyReport, DatasetPair, HelpPayload, RenderModel } from "./types.js";

export interface InputResponse {
  report: ApplyReport;
  render_model: RenderModel;
}

export interface ApiError {
  error: string;
  detail: string;
}

export class ServiceError extends Error {
  code: string;
  constructor(code: string, detail: string) {
    super(detail);
    this.code = code;
  }
}

async function expectJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let code = `HTTP ${response.status}`;
    let detail = response.statusText;
    try {
      const body = (await response.json()) as ApiError;
      code = body.error ?? code;
      detail = body.detail ?? detail;
    } catch {
      // non-JSON error body; keep the HTTP status
    }
    throw new ServiceError(code, detail);
  }
  return (await response.json()) as T;
}

// Thin fetch client over the session endpoints; `base` is "" in the browser
// (same origin) and an absolute URL in tests.
export class Api {
  constructor(private base: string = "") {}

  datasets(): Promise<{ pairs: DatasetPair[] }> {
    return this.get("/datasets");
  }

  createSession(dataset: string, spec: string): Promise<{ session_id: string; render_model: RenderModel }> {
    return this.post("/sessions", { dataset, spec });
  }

  renderModel(sessionId: string): Promise<RenderModel> {
    return this.get(`/sessions/${sessionId}`);
  }

  say(sessionId: string, text: string): Promise<InputResponse> {
    return this.post(`/sessions/${sessionId}/input`, { say: text });
  }

  click(sessionId: string, slot: string, value: string): Promise<InputResponse> {
    return this.post(`/sessions/${sessionId}/input`, { click: { slot, value } });
  }

  help(sessionId: string): Promise<HelpPayload> {
    return this.get(`/sessions/${sessionId}/help`);
  }

  grammar(sessionId: string): Promise<Record<string, unknown>> {
    return this.get(`/sessions/${sessionId}/grammar`);
  }

  async deleteSession(sessionId: string): Promise<void> {
    const response = await fetch(`${this.base}/sessions/${sessionId}`, { method: "DELETE" });
    if (!response.ok && response.status !== 404) {
      throw new ServiceError(`HTTP ${response.status}`, response.statusText);
    }
  }

  private get<T>(path: string): Promise<T> {
    return fetch(`${this.base}${path}`).then((r) => expectJson<T>(r));
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return fetch(`${this.base}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => expectJson<T>(r));
  }
}
