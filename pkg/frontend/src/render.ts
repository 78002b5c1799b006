/**
 * Read a figure spec's input CSV, validate its schema, and write the SVG.
 *
 * Rendering is read-only over inputs and idempotent: the same CSV bytes
 * produce the same SVG bytes. On any validation error no output file is
 * written (render-to-string happens before any write, and the write itself
 * goes through a temp file plus atomic rename).
 */

import { readFileSync, renameSync, writeFileSync } from "node:fs";

import { parseCsv } from "./csv.js";
import { renderCdf, renderGeometry3d, renderHeatmap, renderSweep } from "./figures.js";
import type { FigureSpec } from "./figspec.js";

const RENDERERS = {
  heatmap: renderHeatmap,
  cdf: renderCdf,
  sweep: renderSweep,
  geometry3d: renderGeometry3d,
} as const;

export function renderToString(spec: FigureSpec): string {
  const table = parseCsv(readFileSync(spec.input, "utf-8"));
  return RENDERERS[spec.kind](table, spec);
}

export function render(spec: FigureSpec): string {
  const svg = renderToString(spec);
  const tmp = `${spec.output}.tmp`;
  writeFileSync(tmp, svg, "utf-8");
  renameSync(tmp, spec.output);
  return spec.output;
}
