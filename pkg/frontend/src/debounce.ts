// Debounce with an injectable scheduler so tests can drive time manually.

export interface Scheduler {
  set(fn: () => void, ms: number): unknown;
  clear(handle: unknown): void;
}

export const realScheduler: Scheduler = {
  set: (fn, ms) => setTimeout(fn, ms),
  clear: (handle) => clearTimeout(handle as ReturnType<typeof setTimeout>),
};

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
  scheduler: Scheduler = realScheduler,
): ((...args: A) => void) & { cancel: () => void } {
  let pending: unknown = null;
  const wrapped = (...args: A) => {
    if (pending !== null) scheduler.clear(pending);
    pending = scheduler.set(() => {
      pending = null;
      fn(...args);
    }, ms);
  };
  wrapped.cancel = () => {
    if (pending !== null) {
      scheduler.clear(pending);
      pending = null;
    }
  };
  return wrapped;
}
