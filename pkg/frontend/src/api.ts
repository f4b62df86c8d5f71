// Request construction and fetch wrapper for the local compute service.
// The UI never computes geometry; every coordinate it draws comes back
// from these endpoints.

import type { ControlState, ResultDocument } from "./types.js";

export function serviceBase(): string {
  const w = globalThis as { OVALKIT_SERVICE?: string };
  return w.OVALKIT_SERVICE ?? "http://localhost:7878";
}

export function requestUrl(state: ControlState, base: string = serviceBase()): string {
  const q = new URLSearchParams({
    curve: "cayley",
    a: String(state.a),
    b: String(state.b),
    d: String(state.d),
    side: state.side,
    samples: String(state.samples),
  });
  const endpoint = state.showSingular ? "singular" : state.showEnvelope ? "envelope" : "offset";
  return `${base}/api/${endpoint}?${q.toString()}`;
}

export class ServiceError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export async function fetchDocument(url: string, signal: AbortSignal): Promise<ResultDocument> {
  const resp = await fetch(url, { signal });
  if (resp.status === 202) {
    // job handed off; poll until the document is ready
    const { poll } = (await resp.json()) as { poll: string };
    const base = new URL(url).origin;
    for (;;) {
      await new Promise((r) => setTimeout(r, 120));
      if (signal.aborted) throw new DOMException("superseded", "AbortError");
      const jr = await fetch(base + poll, { signal });
      if (!jr.ok) throw new ServiceError(jr.status, await jr.text());
      const body = await jr.json();
      if (body.singular_points !== undefined) return body as ResultDocument;
      if (body.error) throw new ServiceError(500, JSON.stringify(body.error));
    }
  }
  if (!resp.ok) throw new ServiceError(resp.status, await resp.text());
  return (await resp.json()) as ResultDocument;
}
