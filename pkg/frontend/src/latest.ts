// Latest-wins request gate: at most one in-flight request per control
// group; a new request aborts the old one, and a response is applied only
// if it answers the newest request ever issued.  Stale frames are
// structurally impossible: `applied.url` always equals the newest url
// once the stream settles.

export interface Applied<D> {
  doc: D;
  url: string;
  seq: number;
}

export class LatestWins<D> {
  private seq = 0;
  private controller: AbortController | null = null;
  applied: Applied<D> | null = null;
  pending = false;

  constructor(
    private fetcher: (url: string, signal: AbortSignal) => Promise<D>,
    private onApply: (applied: Applied<D>) => void,
    private onError: (err: unknown) => void = () => {},
  ) {}

  get newestSeq(): number {
    return this.seq;
  }

  request(url: string): number {
    const seq = ++this.seq;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    this.pending = true;
    this.fetcher(url, controller.signal)
      .then((doc) => {
        if (seq !== this.seq) return; // superseded while in flight
        this.pending = false;
        this.applied = { doc, url, seq };
        this.onApply(this.applied);
      })
      .catch((err) => {
        if (seq !== this.seq) return; // aborted by a newer request
        this.pending = false;
        this.onError(err); // keep the last good frame
      });
    return seq;
  }
}
