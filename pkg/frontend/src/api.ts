import type {
  ClusterInfo,
  DateViewGraph,
  FilterSpec,
  LayoutGraph,
  ModelInfo,
  SearchMatch,
  StateDetail,
  TraceGraph,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchFn = (url: string, init?: RequestInit) => Promise<Response>;

/**
 * Thin typed client over the model server. Requests are grouped by
 * channel; firing a request on a channel aborts the in-flight one, so a
 * burst of slider moves settles on the newest response.
 */
export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchFn = (url, init) => fetch(url, init),
  ) {}

  private async get<T>(channel: string, path: string): Promise<T> {
    this.inflight.get(channel)?.abort();
    const controller = new AbortController();
    this.inflight.set(channel, controller);
    let response: Response;
    try {
      response = await this.fetchFn(this.base + path, {
        signal: controller.signal,
      });
    } finally {
      if (this.inflight.get(channel) === controller) {
        this.inflight.delete(channel);
      }
    }
    if (!response.ok) {
      const body = await response.json().catch(() => null);
      const detail = body?.detail;
      throw new ApiError(
        response.status,
        detail?.code ?? "unknown",
        detail?.message ?? `request failed with ${response.status}`,
      );
    }
    return (await response.json()) as T;
  }

  listModels(): Promise<ModelInfo[]> {
    return this.get("models", "/models");
  }

  listClusters(modelId: string): Promise<ClusterInfo[]> {
    return this.get("clusters", `/models/${modelId}/clusters`);
  }

  graph(modelId: string, cluster: number, filter: FilterSpec): Promise<LayoutGraph> {
    const params = new URLSearchParams({
      min_node_freq: String(filter.minNodeFreq),
      min_edge_freq: String(filter.minEdgeFreq),
    });
    return this.get("graph", `/models/${modelId}/clusters/${cluster}/graph?${params}`);
  }

  stateDetail(modelId: string, cluster: number, stateId: string): Promise<StateDetail> {
    const id = encodeURIComponent(stateId);
    return this.get("detail", `/models/${modelId}/clusters/${cluster}/states/${id}`);
  }

  search(modelId: string, cluster: number, q: string, zone?: string): Promise<SearchMatch[]> {
    const params = new URLSearchParams({ q });
    if (zone) params.set("zone", zone);
    return this.get<{ matches: SearchMatch[] }>(
      "search",
      `/models/${modelId}/clusters/${cluster}/search?${params}`,
    ).then((body) => body.matches);
  }

  dateView(modelId: string, from?: string, to?: string): Promise<DateViewGraph> {
    const params = new URLSearchParams();
    if (from) params.set("from", from);
    if (to) params.set("to", to);
    const suffix = params.size > 0 ? `?${params}` : "";
    return this.get("graph", `/models/${modelId}/date-view${suffix}`);
  }

  trace(modelId: string, studentId: string): Promise<TraceGraph> {
    const sid = encodeURIComponent(studentId);
    return this.get("graph", `/models/${modelId}/students/${sid}/trace`);
  }
}
