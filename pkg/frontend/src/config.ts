/**
 * Presentation constants.
 *
 * Everything here is layout vocabulary (axis geometry, labels); no number
 * displayed to the teacher is ever computed from these values. All shown
 * values come verbatim from the service.
 */

export const TERMS = ["NME", "AE", "G", "VG"] as const;
export type Term = (typeof TERMS)[number];

export const INDICATORS = ["A", "B", "C", "D", "E"] as const;
export type Indicator = (typeof INDICATORS)[number];

export const INDICATOR_LABELS: Record<Indicator, string> = {
  A: "Reading, writing and comparing numbers",
  B: "Units of measurement and related calculations",
  C: "Drawing and computing with geometric shapes",
  D: "The four basic arithmetic operations",
  E: "Drawing conclusions from graphs and charts",
};

export const MONTHS = ["MEHR", "ABAN", "AZAR", "DEY", "BAHMAN"] as const;
export type Month = (typeof MONTHS)[number];
export const DAYS_PER_MONTH = 30;

/** Axis geometry of the default grade scale, used only to place marks. */
export const SCALE = {
  lo: 10,
  hi: 20,
  /** Term centers in axis position; labels sit under these ticks. */
  centers: [10, 13.3333, 16.6667, 20] as const,
};

/** Horizontal position of a value on the gauge/chart axis, in percent. */
export function axisPercent(value: number): number {
  const t = (value - SCALE.lo) / (SCALE.hi - SCALE.lo);
  return Math.min(100, Math.max(0, t * 100));
}
