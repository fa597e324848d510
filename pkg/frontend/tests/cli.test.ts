import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it, vi } from "vitest";
import { run } from "../src/cli.js";
import { sweepCsv } from "./formats.test.js";

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "plot-"));
}

function quiet<T>(fn: () => T): T {
  const log = vi.spyOn(console, "log").mockImplementation(() => {});
  const err = vi.spyOn(console, "error").mockImplementation(() => {});
  try {
    return fn();
  } finally {
    log.mockRestore();
    err.mockRestore();
  }
}

describe("plot cli", () => {
  it("renders a scaling plot end to end", () => {
    const dir = tmp();
    const input = join(dir, "sweep.csv");
    writeFileSync(input, sweepCsv([
      { mu: "1e-4", total: "0.01" },
      { mu: "1e-3", total: "0.05" },
      { mu: "1e-2", total: "0.22" },
    ]));
    const out = join(dir, "scaling.svg");
    expect(quiet(() => run(["scaling", input, out]))).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("slope =");
  });

  it("renders a pattern from a field file", () => {
    const dir = tmp();
    const input = join(dir, "m.field");
    writeFileSync(input, `{"kind": "spin", "n": 2, "pad": 4}\n0 1\n2 3\n`);
    const out = join(dir, "pattern.svg");
    expect(quiet(() => run(["pattern", input, out]))).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("<svg");
  });

  it("exits 2 on a missing input file", () => {
    expect(quiet(() => run(["scaling", "absent.csv", "out.svg"]))).toBe(2);
  });

  it("exits 2 on an unknown kind", () => {
    const dir = tmp();
    const input = join(dir, "sweep.csv");
    writeFileSync(input, sweepCsv([{ mu: "1e-3", total: "0.05" }]));
    expect(quiet(() => run(["heatmap", input, join(dir, "o.svg")]))).toBe(2);
  });

  it("exits 2 on an empty csv", () => {
    const dir = tmp();
    const input = join(dir, "empty.csv");
    writeFileSync(input, sweepCsv([]).trim() + "\n");
    expect(quiet(() => run(["scaling", input, join(dir, "o.svg")]))).toBe(2);
  });

  it("exits 2 without arguments", () => {
    expect(quiet(() => run([]))).toBe(2);
  });
});
