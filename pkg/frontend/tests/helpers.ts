import { readFileSync } from "node:fs";
import { join } from "node:path";

// resolved from the package root, where vitest runs
const fixtureDir = join(process.cwd(), "tests", "fixtures");

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(fixtureDir, `${name}.json`), "utf-8")) as T;
}

export interface RecordedCall {
  url: URL;
  signal: AbortSignal | null | undefined;
}

export type Router = (url: URL) => { status: number; body: unknown } | undefined;

/**
 * In-memory stand-in for the model server: resolves requests through a
 * router over recorded fixture payloads and logs every call, so tests
 * can assert both what was asked and what got rendered.
 */
export function fakeFetch(router: Router) {
  const calls: RecordedCall[] = [];
  const fetchFn = (rawUrl: string, init?: RequestInit): Promise<Response> => {
    const url = new URL(rawUrl, "http://fixture");
    calls.push({ url, signal: init?.signal });
    const hit = router(url);
    if (!hit) {
      return Promise.resolve(
        new Response(JSON.stringify({ detail: { code: "not_routed", message: rawUrl } }), {
          status: 404,
        }),
      );
    }
    return Promise.resolve(new Response(JSON.stringify(hit.body), { status: hit.status }));
  };
  return { fetchFn, calls };
}

/** Pending-by-default fetch for cancellation tests. */
export function hangingFetch() {
  const pending: Array<{
    url: string;
    signal: AbortSignal | null | undefined;
    resolve: (body: unknown) => void;
  }> = [];
  const fetchFn = (url: string, init?: RequestInit): Promise<Response> =>
    new Promise((resolve, reject) => {
      init?.signal?.addEventListener("abort", () =>
        reject(new DOMException("request aborted", "AbortError")),
      );
      pending.push({
        url,
        signal: init?.signal,
        resolve: (body) => resolve(new Response(JSON.stringify(body), { status: 200 })),
      });
    });
  return { fetchFn, pending };
}

export function flushMicrotasks(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
