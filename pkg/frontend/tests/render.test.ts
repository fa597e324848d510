import { describe, expect, it } from "vitest";
import { parseFieldFile, parseSweepCsv } from "../src/formats.js";
import { fitExponent } from "../src/fit.js";
import { renderPattern, renderScaling, renderStack, WELL_COLORS } from "../src/render.js";
import { sweepCsv } from "./formats.test.js";

function syntheticTwoThirds(points: number): string {
  const rows = [];
  for (let i = 0; i < points; i++) {
    const mu = 10 ** (-4 + (2 * i) / (points - 1));
    rows.push({ mu: mu.toExponential(12), total: (5 * mu ** (2 / 3)).toExponential(12) });
  }
  return sweepCsv(rows);
}

describe("fitExponent", () => {
  it("recovers a synthetic power law", () => {
    const recs = parseSweepCsv(syntheticTwoThirds(7));
    const fit = fitExponent(recs.map((r) => r.mu), recs.map((r) => r.total));
    expect(fit.slope).toBeCloseTo(2 / 3, 10);
    expect(Math.exp(fit.intercept)).toBeCloseTo(5, 8);
    expect(fit.r2).toBeCloseTo(1, 12);
  });

  it("needs three points", () => {
    expect(() => fitExponent([1e-3, 1e-2], [1, 2])).toThrow(/three/);
  });
});

describe("renderScaling", () => {
  it("annotates the fitted slope", () => {
    const svg = renderScaling(parseSweepCsv(syntheticTwoThirds(5)));
    expect(svg).toContain("slope = 0.667");
    expect(svg.startsWith("<svg")).toBe(true);
  });

  it("draws comparator rows as separate marks", () => {
    const csv = sweepCsv([
      { mu: "0.001", total: "0.05" },
      { mu: "0.001", mode: "landau", total: "0.04" },
      { mu: "0.005", total: "0.15" },
      { mu: "0.01", total: "0.25" },
    ]);
    const svg = renderScaling(parseSweepCsv(csv));
    expect((svg.match(/<circle/g) ?? []).length).toBe(3);
    expect(svg).toContain("<rect x="); // the open-square comparator mark
  });

  it("fails on an empty csv", () => {
    expect(() => renderScaling(parseSweepCsv(
      sweepCsv([]).trim() + "\n"))).toThrow(/three/);
  });
});

describe("renderStack", () => {
  it("stacks the four energy terms with a legend", () => {
    const svg = renderStack(parseSweepCsv(sweepCsv([
      { mu: "0.001", total: "0.06" },
      { mu: "0.01", total: "0.06" },
    ])));
    for (const term of ["wall", "potential", "magnetostatic", "magnetostriction"]) {
      expect(svg).toContain(`>${term}</text>`);
    }
  });

  it("needs at least one row", () => {
    expect(() => renderStack([])).toThrow(/at least one row/);
  });
});

// cell colors only: every well color appears once more in the legend
function cellColorCounts(svg: string): number[] {
  return WELL_COLORS.map(
    (c) => (svg.match(new RegExp(`fill="${c}"`, "g")) ?? []).length - 1);
}

describe("renderPattern", () => {
  it("renders a uniform field in a single color", () => {
    const n = 8;
    const row = Array(n).fill(1).join(" ");
    const text = `{"kind": "spin", "n": ${n}, "pad": 4}\n` +
      Array(n).fill(row).join("\n") + "\n";
    const svg = renderPattern(parseFieldFile(text));
    expect(cellColorCounts(svg)).toEqual([0, n * n, 0, 0]);
    expect(svg).toContain("(-,+)"); // the legend is present
  });

  it("renders a two-well laminate in exactly two colors", () => {
    const n = 8;
    const rows = [];
    for (let i = 0; i < n; i++) rows.push(Array(n).fill(i % 2).join(" "));
    const text = `{"kind": "spin", "n": ${n}, "pad": 4}\n` + rows.join("\n") + "\n";
    const svg = renderPattern(parseFieldFile(text));
    expect(cellColorCounts(svg)).toEqual([32, 32, 0, 0]);
  });

  it("renders vector fields by hue", () => {
    const text = `{"kind": "vector", "n": 2, "pad": 4}\n` +
      "1.0 0.0 0.0 1.0\n-1.0 0.0 0.0 -1.0\n";
    const svg = renderPattern(parseFieldFile(text));
    expect(svg).toContain("hsl(0,");
    expect(svg).toContain("hsl(90,");
    expect(svg).toContain("hsl(180,");
    expect(svg).toContain("hsl(270,");
  });

  it("downsamples large grids", () => {
    const n = 32;
    const row = Array(n).fill(0).join(" ");
    const text = `{"kind": "spin", "n": ${n}, "pad": 4}\n` +
      Array(n).fill(row).join("\n") + "\n";
    const svg = renderPattern(parseFieldFile(text), 16);
    expect((svg.match(/<rect /g) ?? []).length).toBe(16 * 16 + 1 + 4);
  });
});
