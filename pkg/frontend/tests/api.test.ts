import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import type { SearchMatch } from "../src/types.js";
import { fakeFetch, fixture, hangingFetch } from "./helpers.js";

describe("ApiClient", () => {
  it("builds the documented URLs", async () => {
    const { fetchFn, calls } = fakeFetch(() => ({ status: 200, body: { matches: [] } }));
    const api = new ApiClient("", fetchFn);
    await api.graph("m1", 2, { minNodeFreq: 60, minEdgeFreq: 10 });
    await api.search("m1", 0, "f3", "correct_flow");
    await api.dateView("m1", "2013-03-01", "2013-06-30");
    await api.trace("m1", "s001");

    expect(calls[0].url.pathname).toBe("/models/m1/clusters/2/graph");
    expect(calls[0].url.searchParams.get("min_node_freq")).toBe("60");
    expect(calls[1].url.searchParams.get("q")).toBe("f3");
    expect(calls[1].url.searchParams.get("zone")).toBe("correct_flow");
    expect(calls[2].url.searchParams.get("from")).toBe("2013-03-01");
    expect(calls[3].url.pathname).toBe("/models/m1/students/s001/trace");
  });

  it("unwraps search matches", async () => {
    const body = fixture<{ matches: SearchMatch[] }>("search_f3t6");
    const { fetchFn } = fakeFetch(() => ({ status: 200, body }));
    const api = new ApiClient("", fetchFn);
    const matches = await api.search("m1", 0, "f3t6");
    expect(matches).toEqual(body.matches);
  });

  it("raises structured errors from the detail body", async () => {
    const body = fixture("error_state_404");
    const { fetchFn } = fakeFetch(() => ({ status: 404, body }));
    const api = new ApiClient("", fetchFn);
    const failure = await api.stateDetail("m1", 0, "nope").catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(404);
    expect(failure.code).toBe("state_not_found");
    expect(failure.message.length).toBeGreaterThan(0);
  });

  it("aborts a stale request when a newer one supersedes it", async () => {
    const { fetchFn, pending } = hangingFetch();
    const api = new ApiClient("", fetchFn);

    const first = api.graph("m1", 0, { minNodeFreq: 0, minEdgeFreq: 0 });
    const second = api.graph("m1", 0, { minNodeFreq: 60, minEdgeFreq: 0 });
    expect(pending.length).toBe(2);
    expect(pending[0].signal?.aborted).toBe(true);
    expect(pending[1].signal?.aborted).toBe(false);

    await expect(first).rejects.toHaveProperty("name", "AbortError");
    pending[1].resolve({ nodes: [], edges: [] });
    await expect(second).resolves.toMatchObject({ nodes: [] });
  });

  it("keeps independent channels independent", async () => {
    const { fetchFn, pending } = hangingFetch();
    const api = new ApiClient("", fetchFn);
    void api.graph("m1", 0, { minNodeFreq: 0, minEdgeFreq: 0 }).catch(() => {});
    void api.search("m1", 0, "f3").catch(() => {});
    expect(pending.length).toBe(2);
    expect(pending[0].signal?.aborted).toBe(false);
    expect(pending[1].signal?.aborted).toBe(false);
  });
});
