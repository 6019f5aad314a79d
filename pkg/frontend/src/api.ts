// Thin typed client for the session service. All exactness lives server
// side; this layer only moves JSON.

import type {
  DecisionName,
  SessionView,
  StatsResponse,
  Variant,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

// What the UI needs from the service; tests substitute fakes freely.
export interface SessionApi {
  createSession(variant: Variant, q: string): Promise<SessionView>;
  getSession(id: string): Promise<SessionView>;
  pick(id: string): Promise<SessionView>;
  decide(id: string, decision: DecisionName): Promise<SessionView>;
  stats(variant?: Variant, q?: string): Promise<StatsResponse>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient implements SessionApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const message =
        body && typeof body.message === "string"
          ? body.message
          : `request failed with status ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return body as T;
  }

  createSession(variant: Variant, q: string): Promise<SessionView> {
    return this.request<SessionView>("/sessions", {
      method: "POST",
      body: JSON.stringify({ variant, q }),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request<SessionView>(`/sessions/${id}`);
  }

  pick(id: string): Promise<SessionView> {
    return this.request<SessionView>(`/sessions/${id}/pick`, { method: "POST" });
  }

  decide(id: string, decision: DecisionName): Promise<SessionView> {
    return this.request<SessionView>(`/sessions/${id}/decision`, {
      method: "POST",
      body: JSON.stringify({ decision }),
    });
  }

  stats(variant?: Variant, q?: string): Promise<StatsResponse> {
    const params = new URLSearchParams();
    if (variant) params.set("variant", variant);
    if (q) params.set("q", q);
    const suffix = params.toString();
    return this.request<StatsResponse>(`/stats${suffix ? `?${suffix}` : ""}`);
  }

  health(): Promise<{ status: string }> {
    return this.request<{ status: string }>("/healthz");
  }
}
