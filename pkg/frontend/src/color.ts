/**
 * Fixed color scale for spectral-efficiency heatmaps.
 *
 * The default domain is 0..10 bit/s/Hz, running from light yellow at the
 * bottom to dark blue at the top, so figures from different array schemes
 * stay visually comparable. Values outside the domain clamp to its ends.
 */

export const DEFAULT_SCALE_MIN = 0;
export const DEFAULT_SCALE_MAX = 10;

const STOPS: Array<[number, [number, number, number]]> = [
  [0.0, [255, 255, 204]], // light yellow
  [0.25, [199, 233, 180]],
  [0.5, [127, 205, 187]],
  [0.75, [44, 127, 184]],
  [1.0, [8, 29, 88]], // dark blue
];

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

export function colorFor(
  value: number,
  min: number = DEFAULT_SCALE_MIN,
  max: number = DEFAULT_SCALE_MAX,
): string {
  const t = Math.min(1, Math.max(0, (value - min) / (max - min)));
  for (let i = 1; i < STOPS.length; i++) {
    const [t1, c1] = STOPS[i];
    const [t0, c0] = STOPS[i - 1];
    if (t <= t1) {
      const local = (t - t0) / (t1 - t0);
      const rgb = c0.map((c, j) => Math.round(lerp(c, c1[j], local)));
      return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
    }
  }
  const last = STOPS[STOPS.length - 1][1];
  return `rgb(${last[0]},${last[1]},${last[2]})`;
}

/** Categorical colors for per-scheme curves. */
export const SERIES_COLORS = [
  "#1b6ca8",
  "#d1495b",
  "#66a182",
  "#edae49",
  "#5f4b8b",
  "#3c6e71",
  "#c97b63",
  "#444444",
];

export function seriesColor(index: number): string {
  return SERIES_COLORS[index % SERIES_COLORS.length];
}
