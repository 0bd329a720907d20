// Module-level timers are outside any component and out of scope.
export function debounce(fn, ms) {
  let t;
  return (...args) => {
    clearTimeout(t);
    t = setTimeout(() => fn(...args), ms);
  };
}

setInterval(() => console.debug('heartbeat'), 60000);
