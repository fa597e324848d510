#!/usr/bin/env node
/** plot scaling|stack|pattern <in> <out>
 *
 * Renders an SVG from a sweep CSV (scaling, stack) or a field file
 * (pattern). Exit codes: 0 success, 1 internal error, 2 usage or input
 * error.
 */

import { readFileSync, writeFileSync, existsSync, realpathSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseFieldFile, parseSweepCsv } from "./formats.js";
import { renderPattern, renderScaling, renderStack } from "./render.js";

class UsageError extends Error {}

const USAGE = "usage: plot scaling|stack|pattern <in> <out>";

export function run(argv: string[]): number {
  try {
    const [kind, input, output] = argv;
    if (!kind || !input || !output) throw new UsageError(USAGE);
    if (!existsSync(input)) throw new UsageError(`no such input file: ${input}`);
    const text = readFileSync(input, "utf8");
    let svg: string;
    try {
      if (kind === "scaling") {
        svg = renderScaling(parseSweepCsv(text));
      } else if (kind === "stack") {
        svg = renderStack(parseSweepCsv(text));
      } else if (kind === "pattern") {
        svg = renderPattern(parseFieldFile(text));
      } else {
        throw new UsageError(`unknown plot kind '${kind}'\n${USAGE}`);
      }
    } catch (e) {
      // malformed or insufficient input is a usage error, not a crash
      if (e instanceof UsageError) throw e;
      throw new UsageError((e as Error).message);
    }
    writeFileSync(output, svg);
    console.log(output);
    return 0;
  } catch (e) {
    if (e instanceof UsageError) {
      console.error(`error: ${e.message}`);
      return 2;
    }
    console.error(`internal error: ${(e as Error).message}`);
    return 1;
  }
}

function invokedDirectly(): boolean {
  if (!process.argv[1]) return false;
  try {
    // resolve the bin symlink npm creates for the entry point
    const entry = realpathSync(process.argv[1]);
    return import.meta.url === pathToFileURL(entry).href;
  } catch {
    return false;
  }
}

if (invokedDirectly()) {
  process.exit(run(process.argv.slice(2)));
}
