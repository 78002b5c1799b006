/**
 * Figure renderers over the simulator's CSV schemas.
 *
 * heatmap     scheme,x_m,y_m,se_bps_per_hz   -> one panel per scheme, fixed color scale
 * cdf         scheme,se_bps_per_hz,cdf       -> one curve per scheme, shared axes
 * sweep       scheme,sweep_value,...,sum_rate_bps -> sum-rate curve per scheme
 * geometry3d  index,x,y,z,bx,by,bz,...       -> orthographic scatter of the element layout
 */

import {
  Table,
  assertNonEmpty,
  num,
  requireColumns,
  uniqueInOrder,
} from "./csv.js";
import {
  DEFAULT_SCALE_MAX,
  DEFAULT_SCALE_MIN,
  colorFor,
  seriesColor,
} from "./color.js";
import {
  DEFAULT_FRAME,
  Frame,
  axes,
  document,
  linearScale,
  round,
  tag,
  text,
} from "./svg.js";
import type { FigureSpec } from "./figspec.js";

export function renderHeatmap(table: Table, spec: FigureSpec): string {
  const cols = requireColumns(table, ["scheme", "x_m", "y_m", "se_bps_per_hz"], "heatmap");
  assertNonEmpty(table, "heatmap");
  const schemes = uniqueInOrder(table.rows.map((r) => r[cols.get("scheme")!]));
  const lo = spec.scale_min ?? DEFAULT_SCALE_MIN;
  const hi = spec.scale_max ?? DEFAULT_SCALE_MAX;

  const panel = 300;
  const legendWidth = 70;
  const margin = 40;
  const frame: Frame = {
    width: margin + schemes.length * (panel + 16) + legendWidth,
    height: panel + 2 * margin,
    margin: { left: margin, right: legendWidth, top: margin, bottom: margin },
  };

  const parts: string[] = [];
  schemes.forEach((scheme, s) => {
    const rows = table.rows.filter((r) => r[cols.get("scheme")!] === scheme);
    const xs = rows.map((r) => num(r, cols.get("x_m")!));
    const ys = rows.map((r) => num(r, cols.get("y_m")!));
    const xMin = Math.min(...xs);
    const xMax = Math.max(...xs);
    const yMin = Math.min(...ys);
    const yMax = Math.max(...ys);
    const xsUnique = uniqueInOrder(xs.map(String)).length;
    const cell = panel / Math.max(1, xsUnique);
    const left = margin + s * (panel + 16);
    const px = linearScale([xMin, xMax], [left, left + panel - cell]);
    const py = linearScale([yMin, yMax], [margin + panel - cell, margin]);
    rows.forEach((r, i) => {
      parts.push(
        tag("rect", {
          x: round(px(xs[i])),
          y: round(py(ys[i])),
          width: round(cell + 0.5),
          height: round(cell + 0.5),
          fill: colorFor(num(r, cols.get("se_bps_per_hz")!), lo, hi),
        }),
      );
    });
    parts.push(text(left + panel / 2, margin - 10, scheme, { "text-anchor": "middle" }));
    parts.push(
      tag("rect", {
        x: left,
        y: margin,
        width: panel,
        height: panel,
        fill: "none",
        stroke: "#333",
      }),
    );
  });

  // fixed color scale legend
  const legendX = frame.width - legendWidth + 12;
  const steps = 40;
  const legendH = panel;
  for (let i = 0; i < steps; i++) {
    const value = lo + ((hi - lo) * i) / (steps - 1);
    const y = margin + legendH - ((i + 1) * legendH) / steps;
    parts.push(
      tag("rect", {
        x: legendX,
        y: round(y),
        width: 14,
        height: round(legendH / steps + 0.5),
        fill: colorFor(value, lo, hi),
      }),
    );
  }
  parts.push(text(legendX + 18, margin + legendH + 4, `${lo}`));
  parts.push(text(legendX + 18, margin + 8, `${hi}`));
  parts.push(
    text(legendX + 18, margin + legendH / 2, "bit/s/Hz", {
      transform: `rotate(-90 ${legendX + 18} ${round(margin + legendH / 2)})`,
      "text-anchor": "middle",
    }),
  );
  if (spec.title) {
    parts.push(text(frame.width / 2, 16, spec.title, { "text-anchor": "middle" }));
  }
  return document(frame, parts.join("\n"));
}

export function renderCdf(table: Table, spec: FigureSpec): string {
  const cols = requireColumns(table, ["scheme", "se_bps_per_hz", "cdf"], "cdf");
  assertNonEmpty(table, "cdf");
  const schemes = uniqueInOrder(table.rows.map((r) => r[cols.get("scheme")!]));
  const frame = DEFAULT_FRAME;
  const seMax = Math.max(...table.rows.map((r) => num(r, cols.get("se_bps_per_hz")!)));
  const x = linearScale([0, seMax * 1.02], [frame.margin.left, frame.width - frame.margin.right]);
  const y = linearScale([0, 1], [frame.height - frame.margin.bottom, frame.margin.top]);

  const parts: string[] = [
    axes(frame, x, y, spec.x_label ?? "spectral efficiency (bit/s/Hz)", spec.y_label ?? "CDF"),
  ];
  schemes.forEach((scheme, s) => {
    const pts = table.rows
      .filter((r) => r[cols.get("scheme")!] === scheme)
      .map((r) => [num(r, cols.get("se_bps_per_hz")!), num(r, cols.get("cdf")!)] as const)
      .sort((a, b) => a[0] - b[0])
      .map(([se, c]) => `${round(x(se))},${round(y(c))}`)
      .join(" ");
    parts.push(
      tag("polyline", {
        points: pts,
        fill: "none",
        stroke: seriesColor(s),
        "stroke-width": 1.6,
        class: `curve curve-${scheme}`,
      }),
    );
    parts.push(
      text(frame.width - frame.margin.right - 150, frame.margin.top + 16 * (s + 1), scheme, {
        fill: seriesColor(s),
      }),
    );
  });
  if (spec.title) {
    parts.push(text(frame.width / 2, 16, spec.title, { "text-anchor": "middle" }));
  }
  return document(frame, parts.join("\n"));
}

export function renderSweep(table: Table, spec: FigureSpec): string {
  const cols = requireColumns(table, ["scheme", "sweep_value", "sum_rate_bps"], "sweep");
  assertNonEmpty(table, "sweep");
  const schemes = uniqueInOrder(table.rows.map((r) => r[cols.get("scheme")!]));

  // per-user rows repeat the sum rate; keep one point per (scheme, sweep value)
  const series = new Map<string, Map<number, number>>();
  for (const r of table.rows) {
    const scheme = r[cols.get("scheme")!];
    const v = num(r, cols.get("sweep_value")!);
    const sum = num(r, cols.get("sum_rate_bps")!);
    if (!series.has(scheme)) series.set(scheme, new Map());
    series.get(scheme)!.set(v, sum);
  }

  const allValues = [...series.values()].flatMap((m) => [...m.keys()]);
  const allSums = [...series.values()].flatMap((m) => [...m.values()]);
  const frame = DEFAULT_FRAME;
  const x = linearScale(
    [Math.min(...allValues), Math.max(...allValues)],
    [frame.margin.left, frame.width - frame.margin.right],
  );
  const y = linearScale([0, Math.max(...allSums) * 1.05], [frame.height - frame.margin.bottom, frame.margin.top]);

  const parts: string[] = [
    axes(frame, x, y, spec.x_label ?? "sweep value", spec.y_label ?? "sum rate (bit/s)"),
  ];
  schemes.forEach((scheme, s) => {
    const pts = [...series.get(scheme)!.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([v, sum]) => `${round(x(v))},${round(y(sum))}`)
      .join(" ");
    parts.push(
      tag("polyline", {
        points: pts,
        fill: "none",
        stroke: seriesColor(s),
        "stroke-width": 1.8,
        class: `curve curve-${scheme}`,
      }),
    );
    parts.push(
      text(frame.margin.left + 12, frame.margin.top + 16 * (s + 1), scheme, {
        fill: seriesColor(s),
      }),
    );
  });
  if (spec.title) {
    parts.push(text(frame.width / 2, 16, spec.title, { "text-anchor": "middle" }));
  }
  return document(frame, parts.join("\n"));
}

export function renderGeometry3d(table: Table, spec: FigureSpec): string {
  const cols = requireColumns(table, ["index", "x", "y", "z"], "geometry3d");
  assertNonEmpty(table, "geometry3d");
  const frame: Frame = { ...DEFAULT_FRAME, height: 520 };

  // orthographic projection with a gentle tilt so the vertical layout reads
  const tilt = Math.PI / 7;
  const spin = Math.PI / 5;
  const pts = table.rows.map((r) => {
    const x = num(r, cols.get("x")!);
    const y = num(r, cols.get("y")!);
    const z = num(r, cols.get("z")!);
    const xr = x * Math.cos(spin) + y * Math.sin(spin);
    const yr = -x * Math.sin(spin) + y * Math.cos(spin);
    return {
      u: xr,
      v: z * Math.cos(tilt) - yr * Math.sin(tilt),
      depth: yr,
      z,
    };
  });
  const us = pts.map((p) => p.u);
  const vs = pts.map((p) => p.v);
  const span = Math.max(
    Math.max(...us) - Math.min(...us),
    Math.max(...vs) - Math.min(...vs),
    1e-9,
  );
  const cx = (Math.max(...us) + Math.min(...us)) / 2;
  const cy = (Math.max(...vs) + Math.min(...vs)) / 2;
  const view = Math.min(
    frame.width - frame.margin.left - frame.margin.right,
    frame.height - frame.margin.top - frame.margin.bottom,
  );
  const sx = (u: number) => frame.width / 2 + ((u - cx) / span) * view;
  const sy = (v: number) => frame.height / 2 - ((v - cy) / span) * view;

  const zMin = Math.min(...pts.map((p) => p.z));
  const zMax = Math.max(...pts.map((p) => p.z));
  const body = pts
    .sort((a, b) => a.depth - b.depth)
    .map((p) =>
      tag("circle", {
        cx: round(sx(p.u)),
        cy: round(sy(p.v)),
        r: 2.2,
        fill: colorFor(p.z, zMin, zMax === zMin ? zMin + 1 : zMax),
        "fill-opacity": 0.85,
      }),
    )
    .join("\n");
  const title = spec.title ? text(frame.width / 2, 16, spec.title, { "text-anchor": "middle" }) : "";
  return document(frame, body + "\n" + title);
}
