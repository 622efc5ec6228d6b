/**
 * Display formatting. Engines keep full precision; the UI rounds awards and
 * demand figures to one decimal (round-half-even) only at presentation.
 */

export function roundHalfEven(value: number, decimals: number): number {
  const factor = Math.pow(10, decimals);
  const scaled = value * factor;
  const floor = Math.floor(scaled);
  const diff = scaled - floor;
  const eps = 1e-9;
  let rounded: number;
  if (diff > 0.5 + eps) rounded = floor + 1;
  else if (diff < 0.5 - eps) rounded = floor;
  else rounded = floor % 2 === 0 ? floor : floor + 1;
  return rounded / factor;
}

/** One-decimal display string, e.g. 789.75 -> "789.8", 3200 -> "3200.0". */
export function fmt1(value: number): string {
  return roundHalfEven(value, 1).toFixed(1);
}

/** Non-negative finite number from a form field; null when invalid. */
export function parseNonNegative(raw: string): number | null {
  const trimmed = raw.trim();
  if (trimmed === '') return null;
  const value = Number(trimmed);
  if (!Number.isFinite(value) || value < 0) return null;
  return value;
}
