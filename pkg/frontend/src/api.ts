// HTTP client for the minipencil session service. The UI never computes
// language semantics itself: everything it shows comes from these responses.

export interface PaletteEntry {
  id: string;
  category: string;
  label: string;
  template: string;
  sockets: string[];
}

export interface Diagnostic {
  severity: string;
  code: string;
  message: string;
  line: number; // 1-based
  col: number; // 1-based
}

export interface LayoutRow {
  row: number;
  depth: number;
  block_ids: number[];
  leading_blank: boolean;
}

export interface SessionState {
  id: string;
  revision: number;
  text: string;
  stale: boolean;
  diagnostics: Diagnostic[];
  blocks: string;
  block_types: Record<string, string>;
  layout: LayoutRow[];
  changed_line_range?: [number, number] | null;
}

export interface EditRange {
  start_line: number;
  start_col: number;
  end_line: number;
  end_col: number;
}

export interface TraceSegment {
  from: [number, number];
  to: [number, number];
  color: string;
}

export interface Trace {
  output: string[];
  segments: TraceSegment[];
  final: { x: number; y: number; heading: number };
  steps: number;
}

export interface RunError {
  code: string;
  message: string;
  line: number;
}

export interface RunResult {
  revision: number;
  trace: Trace | null;
  error: RunError | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class RevisionConflictError extends ApiError {
  constructor(message: string) {
    super(409, message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (response.status === 409) {
      throw new RevisionConflictError(await response.text());
    }
    if (!response.ok) {
      throw new ApiError(response.status, `${method} ${path}: ${await response.text()}`);
    }
    return (await response.json()) as T;
  }

  palette(): Promise<PaletteEntry[]> {
    return this.request("GET", "/palette");
  }

  createSession(text: string): Promise<{ id: string; state: SessionState }> {
    return this.request("POST", "/sessions", { text });
  }

  getSession(id: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${id}`);
  }

  drop(
    id: string,
    paletteId: string,
    line: number,
    expectedRevision: number,
  ): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/drop`, {
      palette_id: paletteId,
      line,
      expected_revision: expectedRevision,
    });
  }

  edit(
    id: string,
    range: EditRange,
    replacement: string,
    expectedRevision: number,
  ): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/edit`, {
      range,
      replacement,
      expected_revision: expectedRevision,
    });
  }

  run(id: string): Promise<RunResult> {
    return this.request("POST", `/sessions/${id}/run`, {});
  }
}
