import { describe, expect, it } from "vitest";

import { assertNonEmpty, parseCsv, requireColumns, uniqueInOrder } from "../src/csv.js";

describe("csv parsing", () => {
  it("splits header and rows", () => {
    const t = parseCsv("a,b\n1,2\n3,4\n");
    expect(t.columns).toEqual(["a", "b"]);
    expect(t.rows).toEqual([
      ["1", "2"],
      ["3", "4"],
    ]);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1\n")).toThrow(/expected 2 fields/);
  });

  it("rejects a file with no header", () => {
    expect(() => parseCsv("")).toThrow(/empty CSV/);
  });

  it("names the missing column and figure kind", () => {
    const t = parseCsv("scheme,x_m,y_m\nh,0,0\n");
    expect(() => requireColumns(t, ["scheme", "x_m", "y_m", "se_bps_per_hz"], "heatmap"))
      .toThrow(/missing column 'se_bps_per_hz' for heatmap input/);
  });

  it("flags empty data sections", () => {
    const t = parseCsv("scheme,se_bps_per_hz,cdf\n");
    expect(() => assertNonEmpty(t, "cdf")).toThrow(/no data rows/);
  });

  it("keeps first-appearance order for unique values", () => {
    expect(uniqueInOrder(["b", "a", "b", "c", "a"])).toEqual(["b", "a", "c"]);
  });
});
