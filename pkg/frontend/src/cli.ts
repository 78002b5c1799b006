#!/usr/bin/env node
/**
 * haparray-plot: render simulator CSV results as SVG figures.
 *
 * Usage:
 *   haparray-plot plot <figure_spec.json> [more specs...]
 *
 * A figure spec names the kind (heatmap | cdf | sweep | geometry3d), the
 * input CSV, and the output SVG path; see README for the full schema.
 */

import { readFileSync } from "node:fs";

import { parseFigureSpec } from "./figspec.js";
import { render } from "./render.js";

export function main(argv: string[]): number {
  const [command, ...specPaths] = argv;
  if (command !== "plot" || specPaths.length === 0) {
    console.error("usage: haparray-plot plot <figure_spec.json> [...]");
    return 2;
  }
  for (const path of specPaths) {
    let specText: string;
    try {
      specText = readFileSync(path, "utf-8");
    } catch (err) {
      console.error(`cannot read ${path}: ${(err as Error).message}`);
      return 4;
    }
    try {
      const out = render(parseFigureSpec(specText));
      console.log(`wrote ${out}`);
    } catch (err) {
      console.error(`${path}: ${(err as Error).message}`);
      return 3;
    }
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
