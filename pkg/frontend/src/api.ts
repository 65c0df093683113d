import type {
  DatasetHandle,
  DetailKind,
  DetailPayload,
  MaskPayload,
  OverviewResponse,
  TimelinePayload,
} from "./types.js";

export interface OverviewParams {
  from?: number;
  to?: number;
  alpha?: number;
  detailSource?: "original" | "difference";
}

export interface MaskParams {
  from?: number;
  to?: number;
  criterion?: "avgChange" | "changedEdgeCount";
  threshold?: number;
  gap?: number;
}

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<any>;
}>;

function query(params: Record<string, unknown>): string {
  const parts: string[] = [];
  for (const [k, v] of Object.entries(params)) {
    if (v !== undefined && v !== null) parts.push(`${k}=${encodeURIComponent(String(v))}`);
  }
  return parts.length ? `?${parts.join("&")}` : "";
}

export class ApiError extends Error {
  constructor(public status: number, public code: string, message: string) {
    super(message);
  }
}

// Thin typed wrapper over the JSON endpoints. The fetch function is
// injected so tests can serve recorded payloads and control timing.
export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url) => fetch(url)
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, body?.code ?? "unknown", body?.message ?? "request failed");
    }
    return body as T;
  }

  listDatasets(): Promise<DatasetHandle[]> {
    return this.get("/api/datasets");
  }

  getOverview(id: string, params: OverviewParams = {}): Promise<OverviewResponse> {
    return this.get(`/api/datasets/${id}/overview${query(params as any)}`);
  }

  getDetail(id: string, t: number, kind: DetailKind): Promise<DetailPayload> {
    return this.get(`/api/datasets/${id}/detail/${t}${query({ kind })}`);
  }

  getMask(id: string, params: MaskParams = {}): Promise<MaskPayload> {
    return this.get(`/api/datasets/${id}/mask${query(params as any)}`);
  }

  getTimeline(id: string): Promise<TimelinePayload> {
    return this.get(`/api/datasets/${id}/timeline`);
  }
}

// One counter per channel; a response only wins if no newer request on the
// same channel started while it was in flight.
export class StaleGuard {
  private seq: Record<string, number> = {};

  begin(channel: string): number {
    this.seq[channel] = (this.seq[channel] ?? 0) + 1;
    return this.seq[channel];
  }

  isCurrent(channel: string, token: number): boolean {
    return this.seq[channel] === token;
  }
}
