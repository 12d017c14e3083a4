"use strict";
// Debounce with an injectable scheduler so tests can drive time manually.
Object.defineProperty(exports, "__esModule", { value: true });
exports.realScheduler = void 0;
exports.debounce = debounce;
exports.realScheduler = {
    set: (fn, ms) => setTimeout(fn, ms),
    clear: (handle) => clearTimeout(handle),
};
function debounce(fn, ms, scheduler = exports.realScheduler) {
    let pending = null;
    const wrapped = (...args) => {
        if (pending !== null)
            scheduler.clear(pending);
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
