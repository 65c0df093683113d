// Palette constants. Diverging ramp runs blue -> white -> red; the gray
// ramp runs white -> near-black. Stops are UI constants, not server data.

export const NEGATIVE_STOP = { r: 33, g: 102, b: 172 }; // deep blue
export const POSITIVE_STOP = { r: 178, g: 24, b: 43 }; // deep red
export const NEUTRAL_STOP = { r: 247, g: 247, b: 247 }; // near white
export const DARK_STOP = { r: 26, g: 26, b: 26 };

export const HIGHLIGHT_POSITIVE = "#b2182b";
export const HIGHLIGHT_NEGATIVE = "#2166ac";

type Rgb = { r: number; g: number; b: number };

function mix(a: Rgb, b: Rgb, t: number): string {
  const ch = (x: number, y: number) => Math.round(x + (y - x) * t);
  return `rgb(${ch(a.r, b.r)},${ch(a.g, b.g)},${ch(a.b, b.b)})`;
}

function clamp(x: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, x));
}

// value/maxAbs clamped into [-1, 1]; negative side blue, positive side red.
export function divergingColor(value: number, maxAbs: number): string {
  if (!(maxAbs > 0)) throw new Error(`maxAbs must be positive, got ${maxAbs}`);
  const t = clamp(value / maxAbs, -1, 1);
  return t < 0 ? mix(NEUTRAL_STOP, NEGATIVE_STOP, -t) : mix(NEUTRAL_STOP, POSITIVE_STOP, t);
}

// value/max clamped into [0, 1] on a white-to-dark ramp.
export function sequentialGray(value: number, max: number): string {
  if (!(max > 0)) throw new Error(`max must be positive, got ${max}`);
  const t = clamp(value / max, 0, 1);
  return mix(NEUTRAL_STOP, DARK_STOP, t);
}

export function signColor(sign: "positive" | "negative"): string {
  return sign === "positive" ? HIGHLIGHT_POSITIVE : HIGHLIGHT_NEGATIVE;
}
