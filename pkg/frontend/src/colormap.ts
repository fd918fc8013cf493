/**
 * Fixed blue-to-red ramp for metric heatmaps: blue is low, red is high,
 * passing through a pale midpoint so mid-range cells stay readable over
 * the plan linework.
 */

export interface Rgb {
  r: number;
  g: number;
  b: number;
}

const LOW: Rgb = { r: 44, g: 123, b: 182 };
const MID: Rgb = { r: 255, g: 255, b: 191 };
const HIGH: Rgb = { r: 215, g: 25, b: 28 };

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

function mix(a: Rgb, b: Rgb, t: number): Rgb {
  return {
    r: Math.round(lerp(a.r, b.r, t)),
    g: Math.round(lerp(a.g, b.g, t)),
    b: Math.round(lerp(a.b, b.b, t)),
  };
}

/** Map value into [0, 1] over [min, max]; a degenerate range pins to 0.5. */
export function normalize(value: number, min: number, max: number): number {
  if (!(max > min)) return 0.5;
  const t = (value - min) / (max - min);
  return Math.min(1, Math.max(0, t));
}

export function rampColor(t: number): Rgb {
  const clamped = Math.min(1, Math.max(0, t));
  return clamped < 0.5 ? mix(LOW, MID, clamped * 2) : mix(MID, HIGH, (clamped - 0.5) * 2);
}

export function valueToCss(value: number, min: number, max: number, alpha = 1): string {
  const { r, g, b } = rampColor(normalize(value, min, max));
  return `rgba(${r}, ${g}, ${b}, ${alpha})`;
}

/** Distinct member hues for the superimposed comparison view. */
export function memberColor(index: number, count: number, alpha = 1): string {
  const hue = Math.round((360 * index) / Math.max(1, count));
  return `hsla(${hue}, 75%, 45%, ${alpha})`;
}
