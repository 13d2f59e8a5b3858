/** Display formatting: counts get thousands separators, scores 3 significant figures. */

export function formatCount(value: number): string {
  return value.toLocaleString("en-US");
}

export function formatScore(value: number): string {
  if (value === 0) return "0";
  const formatted = value.toPrecision(3);
  // strip scientific notation for moderately sized values, keep it for tiny ones
  const asNumber = Number(formatted);
  if (Math.abs(asNumber) >= 0.001 && Math.abs(asNumber) < 1_000_000) {
    return String(asNumber);
  }
  return formatted;
}

export function formatOddsLike(value: number): string {
  return value.toPrecision(2);
}
