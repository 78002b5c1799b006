/** Small SVG string builders shared by the figure renderers. */

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  body = "",
): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return body === ""
    ? `<${name} ${parts}/>`
    : `<${name} ${parts}>${body}</${name}>`;
}

export function text(
  x: number,
  y: number,
  body: string,
  attrs: Record<string, string | number> = {},
): string {
  return tag(
    "text",
    { x: round(x), y: round(y), "font-size": 11, "font-family": "sans-serif", ...attrs },
    esc(body),
  );
}

export function round(v: number): number {
  return Math.round(v * 100) / 100;
}

export interface Frame {
  width: number;
  height: number;
  margin: { left: number; right: number; top: number; bottom: number };
}

export const DEFAULT_FRAME: Frame = {
  width: 640,
  height: 480,
  margin: { left: 64, right: 24, top: 32, bottom: 48 },
};

export interface LinearScale {
  (value: number): number;
  domain: [number, number];
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const fn = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as LinearScale;
  fn.domain = domain;
  return fn;
}

export function ticks(domain: [number, number], count = 6): number[] {
  const [lo, hi] = domain;
  const raw = (hi - lo) / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(Math.abs(raw) || 1)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => (hi - lo) / s <= count) ?? mag * 10;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function fmtTick(v: number): string {
  if (Math.abs(v) >= 1e9) return `${round(v / 1e9)}G`;
  if (Math.abs(v) >= 1e6) return `${round(v / 1e6)}M`;
  if (Math.abs(v) >= 1e4) return `${round(v / 1e3)}k`;
  return `${round(v)}`;
}

export function axes(
  frame: Frame,
  x: LinearScale,
  y: LinearScale,
  xLabel: string,
  yLabel: string,
): string {
  const { width, height, margin } = frame;
  const parts: string[] = [];
  const x0 = margin.left;
  const x1 = width - margin.right;
  const y0 = height - margin.bottom;
  const y1 = margin.top;
  parts.push(tag("line", { x1: x0, y1: y0, x2: x1, y2: y0, stroke: "#333" }));
  parts.push(tag("line", { x1: x0, y1: y0, x2: x0, y2: y1, stroke: "#333" }));
  for (const t of ticks(x.domain)) {
    const px = x(t);
    parts.push(tag("line", { x1: round(px), y1: y0, x2: round(px), y2: y0 + 4, stroke: "#333" }));
    parts.push(text(px - 8, y0 + 16, fmtTick(t)));
  }
  for (const t of ticks(y.domain)) {
    const py = y(t);
    parts.push(tag("line", { x1: x0 - 4, y1: round(py), x2: x0, y2: round(py), stroke: "#333" }));
    parts.push(text(x0 - 8, py + 4, fmtTick(t), { "text-anchor": "end" }));
  }
  parts.push(text((x0 + x1) / 2, height - 10, xLabel, { "text-anchor": "middle" }));
  parts.push(
    text(16, (y0 + y1) / 2, yLabel, {
      "text-anchor": "middle",
      transform: `rotate(-90 16 ${round((y0 + y1) / 2)})`,
    }),
  );
  return parts.join("\n");
}

export function document(frame: Frame, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" viewBox="0 0 ${frame.width} ${frame.height}">`,
    tag("rect", { x: 0, y: 0, width: frame.width, height: frame.height, fill: "white" }),
    body,
    "</svg>",
    "",
  ].join("\n");
}
