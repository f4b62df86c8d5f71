// Latest-wins gate under a scripted slider burst: whatever order the
// responses land in, the applied document is the one for the newest
// request, and aborted requests never surface.

import { describe, expect, it } from "vitest";

import { LatestWins } from "../src/latest.js";

interface FakeDoc {
  url: string;
}

function deferredFetcher(log: { aborted: string[]; resolved: string[] }) {
  const pending: { url: string; signal: AbortSignal; resolve: (d: FakeDoc) => void; reject: (e: unknown) => void }[] = [];
  const fetcher = (url: string, signal: AbortSignal) =>
    new Promise<FakeDoc>((resolve, reject) => {
      const entry = { url, signal, resolve, reject };
      pending.push(entry);
      signal.addEventListener("abort", () => {
        log.aborted.push(url);
        reject(new DOMException("aborted", "AbortError"));
      });
    });
  const flush = (order: "fifo" | "lifo" | number[] = "fifo") => {
    const alive = pending.filter((p) => !p.signal.aborted);
    const sequence =
      order === "fifo" ? alive : order === "lifo" ? [...alive].reverse() : order.map((i) => alive[i]);
    for (const p of sequence) {
      if (p && !p.signal.aborted) {
        log.resolved.push(p.url);
        p.resolve({ url: p.url });
      }
    }
    pending.length = 0;
  };
  return { fetcher, flush, pending };
}

describe("latest-wins request gate", () => {
  it("a 20-event burst settles on the newest request", async () => {
    const log = { aborted: [] as string[], resolved: [] as string[] };
    const { fetcher, flush } = deferredFetcher(log);
    const applied: string[] = [];
    const gate = new LatestWins<FakeDoc>(fetcher, (a) => applied.push(a.url));

    const urls = Array.from({ length: 20 }, (_, i) => `/api/offset?d=${(i + 1) / 10}`);
    for (const u of urls) gate.request(u);
    flush("fifo");
    await new Promise((r) => setTimeout(r, 0));

    // 19 of the 20 were aborted in flight; only the newest was applied
    expect(log.aborted.length).toBe(19);
    expect(applied).toEqual([urls[19]]);
    expect(gate.applied?.url).toBe(urls[19]);
    expect(gate.applied?.seq).toBe(gate.newestSeq);
    expect(gate.pending).toBe(false);
  });

  it("an un-aborted stale response still loses to a newer request", async () => {
    // simulate a fetcher that ignores abort (e.g. cached promise reuse)
    const applied: string[] = [];
    let release1: (d: FakeDoc) => void = () => {};
    const slowThenFast = (url: string, _signal: AbortSignal) =>
      new Promise<FakeDoc>((resolve) => {
        if (url === "first") release1 = resolve;
        else resolve({ url });
      });
    const gate = new LatestWins<FakeDoc>(slowThenFast, (a) => applied.push(a.url));
    gate.request("first");
    gate.request("second");
    await new Promise((r) => setTimeout(r, 0));
    release1({ url: "first" }); // arrives after "second" was applied
    await new Promise((r) => setTimeout(r, 0));
    expect(applied).toEqual(["second"]);
    expect(gate.applied?.url).toBe("second");
  });

  it("a failed newest request keeps the last good frame and reports", async () => {
    const applied: string[] = [];
    const errors: unknown[] = [];
    const fetcher = (url: string, _signal: AbortSignal) =>
      url === "bad" ? Promise.reject(new Error("boom")) : Promise.resolve({ url });
    const gate = new LatestWins<FakeDoc>(fetcher, (a) => applied.push(a.url), (e) => errors.push(e));
    gate.request("good");
    await new Promise((r) => setTimeout(r, 0));
    gate.request("bad");
    await new Promise((r) => setTimeout(r, 0));
    expect(applied).toEqual(["good"]);
    expect(gate.applied?.url).toBe("good"); // last good frame retained
    expect(errors.length).toBe(1);
  });
});
