/**
 * Typed client for the evaluation service. Pure transport: requests go out,
 * documents come back untouched. Errors are returned as values so the UI can
 * distinguish "explain the conflict" from "offer a retry".
 */

export interface EvaluationPayload {
  indicator: string;
  value: number | string;
  day?: number;
  month?: string;
  day_of_month?: number;
  note?: string;
}

export interface StatusDoc {
  student_id: string;
  indicators: Record<string, number | null>;
  chain: Record<string, number | null>;
  final: { value: number; term: string } | null;
  record_count: number;
  last_update_day: number | null;
}

export interface PostResultDoc extends StatusDoc {
  seq: number;
  clamped: boolean;
  applied_value: number;
}

export interface TimelineDay {
  day: number;
  status: Record<string, number | null>;
  final: number | null;
  term: string | null;
}

export interface TimelineDoc {
  student_id: string;
  days: TimelineDay[];
}

export interface ReportDoc {
  student_id: string;
  indicators: Record<
    string,
    { label: string; evaluations: number; value: number | null; term: string | null }
  >;
  chain: Record<string, number | null>;
  final: { value: number; term: string } | null;
  record_count: number;
  last_update_day: number | null;
}

export type ApiFailure =
  | { ok: false; kind: "conflict"; message: string }
  | { ok: false; kind: "validation"; message: string }
  | { ok: false; kind: "not_found"; message: string }
  | { ok: false; kind: "network"; message: string; retryable: true }
  | { ok: false; kind: "http"; message: string; status: number };

export type ApiResult<T> = { ok: true; doc: T } | ApiFailure;

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function describeDetail(detail: unknown): string {
  if (typeof detail === "string") return detail;
  if (detail && typeof detail === "object") {
    return Object.entries(detail as Record<string, unknown>)
      .map(([field, msg]) => `${field}: ${msg}`)
      .join("; ");
  }
  return "request rejected";
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<ApiResult<T>> {
    let res: Response;
    try {
      res = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      return {
        ok: false,
        kind: "network",
        message: `could not reach the service (${String(err)})`,
        retryable: true,
      };
    }
    if (res.ok) {
      return { ok: true, doc: (await res.json()) as T };
    }
    let detail: unknown = null;
    try {
      detail = ((await res.json()) as { detail?: unknown }).detail;
    } catch {
      /* non-JSON error body */
    }
    const message = describeDetail(detail);
    if (res.status === 409) return { ok: false, kind: "conflict", message };
    if (res.status === 400 || res.status === 422)
      return { ok: false, kind: "validation", message };
    if (res.status === 404) return { ok: false, kind: "not_found", message };
    return { ok: false, kind: "http", message, status: res.status };
  }

  postEvaluation(student: string, payload: EvaluationPayload): Promise<ApiResult<PostResultDoc>> {
    return this.request(`/students/${encodeURIComponent(student)}/evaluations`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  getStatus(student: string): Promise<ApiResult<StatusDoc>> {
    return this.request(`/students/${encodeURIComponent(student)}/status`);
  }

  getTimeline(student: string, fromDay = 1, toDay = 150): Promise<ApiResult<TimelineDoc>> {
    const q = `?from_day=${fromDay}&to_day=${toDay}`;
    return this.request(`/students/${encodeURIComponent(student)}/timeline${q}`);
  }

  getReport(student: string): Promise<ApiResult<ReportDoc>> {
    return this.request(`/students/${encodeURIComponent(student)}/report`);
  }
}
