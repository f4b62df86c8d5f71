// Trailing debounce with a hard rate cap.
//
// A slider drag emits a dense event stream; we coalesce it to at most one
// call per debounce window and never exceed maxPerSecond calls even under
// a sustained drag (the trailing timer keeps getting pushed back, so the
// rate cap alone decides the steady-state frequency).

export interface Debounced<A> {
  (value: A): void;
  cancel(): void;
}

export function debounceRated<A>(
  fn: (value: A) => void,
  waitMs: number,
  maxPerSecond: number,
  now: () => number = () => performance.now(),
): Debounced<A> {
  const minInterval = 1000 / maxPerSecond;
  let timer: ReturnType<typeof setTimeout> | undefined;
  let lastFire = -Infinity;
  let lastValue: A;

  const fire = () => {
    timer = undefined;
    lastFire = now();
    fn(lastValue);
  };

  const schedule = (delay: number) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(fire, delay);
  };

  const wrapped = (value: A) => {
    lastValue = value;
    const sinceFire = now() - lastFire;
    schedule(Math.max(waitMs, minInterval - sinceFire));
  };
  wrapped.cancel = () => {
    if (timer !== undefined) clearTimeout(timer);
    timer = undefined;
  };
  return wrapped;
}
