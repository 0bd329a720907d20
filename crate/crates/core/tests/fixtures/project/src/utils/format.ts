export function formatTime(ms: number): string {
  return new Date(ms).toISOString().slice(11, 19);
}
