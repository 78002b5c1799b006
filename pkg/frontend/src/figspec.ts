/** Figure specification: which CSV to read, how to render it, where to. */

export const FIGURE_KINDS = ["heatmap", "cdf", "sweep", "geometry3d"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  input: string;
  output: string;
  title?: string;
  x_label?: string;
  y_label?: string;
  /** Heatmap color-scale overrides; defaults stay at the fixed 0..10 range. */
  scale_min?: number;
  scale_max?: number;
}

export function parseFigureSpec(text: string): FigureSpec {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new Error(`invalid figure spec JSON: ${(err as Error).message}`);
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new Error("figure spec must be a JSON object");
  }
  const spec = raw as Record<string, unknown>;
  const kind = spec.kind;
  if (typeof kind !== "string" || !FIGURE_KINDS.includes(kind as FigureKind)) {
    throw new Error(`figure kind must be one of ${FIGURE_KINDS.join(", ")}`);
  }
  for (const field of ["input", "output"]) {
    if (typeof spec[field] !== "string" || (spec[field] as string).length === 0) {
      throw new Error(`figure spec needs a non-empty '${field}' path`);
    }
  }
  for (const field of ["scale_min", "scale_max"]) {
    if (field in spec && typeof spec[field] !== "number") {
      throw new Error(`figure spec '${field}' must be a number`);
    }
  }
  return spec as unknown as FigureSpec;
}
