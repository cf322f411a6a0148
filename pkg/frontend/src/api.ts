// Typed client for the session service.  The server is authoritative for
// every game-state question; this module only moves JSON.

export interface SessionConfig {
  mode: string;
  w: number;
  spoiler: string;
  algorithm: string;
  seed: number;
  n_points?: number | null;
}

export interface PresentEvent {
  present: { id: number; down: number[]; up: number[] };
}

export interface AssignEvent {
  assign: { id: number; chain: number };
}

export type GameEvent = PresentEvent | AssignEvent;

export function isPresent(e: GameEvent): e is PresentEvent {
  return "present" in e;
}

export interface SessionState {
  config: SessionConfig;
  human_role: string;
  events: GameEvent[];
  chains_used: number;
  bound: number;
  next_actor: string;
  outcome: string | null;
  pending_point: number | null;
  valid_chains: number[];
  maximal_points: number[];
  width: number;
}

export interface IntervalEndpoint {
  id: number;
  num: number;
  den: number;
}

export interface CreateSessionBody {
  mode?: string;
  w: number;
  human_role?: string;
  spoiler?: string;
  algorithm?: string;
  seed?: number;
  n_points?: number | null;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

async function parse<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let code = "http_error";
    let message = `${response.status}`;
    try {
      const body = (await response.json()) as { code?: string; message?: string };
      code = body.code ?? code;
      message = body.message ?? message;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(code, message, response.status);
  }
  return (await response.json()) as T;
}

export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async post<T>(path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? null : JSON.stringify(body),
    });
    return parse<T>(response);
  }

  private async get<T>(path: string): Promise<T> {
    return parse<T>(await this.fetchFn(this.base + path));
  }

  createSession(body: CreateSessionBody): Promise<{ id: string; state: SessionState }> {
    return this.post("/api/sessions", body);
  }

  getState(id: string): Promise<SessionState> {
    return this.get(`/api/sessions/${id}`);
  }

  step(id: string): Promise<SessionState> {
    return this.post(`/api/sessions/${id}/step`);
  }

  assign(id: string, chain: number | "new"): Promise<SessionState> {
    return this.post(`/api/sessions/${id}/assign`, { chain });
  }

  present(id: string, down: number[], up: number[] = []): Promise<SessionState> {
    return this.post(`/api/sessions/${id}/present`, { down, up });
  }

  stop(id: string): Promise<SessionState> {
    return this.post(`/api/sessions/${id}/stop`);
  }

  async intervals(id: string): Promise<IntervalEndpoint[]> {
    const body = await this.get<{ left_endpoints: IntervalEndpoint[] }>(
      `/api/sessions/${id}/intervals`,
    );
    return body.left_endpoints;
  }
}
