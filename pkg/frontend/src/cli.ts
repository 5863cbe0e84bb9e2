#!/usr/bin/env node
/**
 * Command-line entry point: `render --kind regret|rd --in <csv> --out <svg>`.
 *
 * Reads one CSV produced by the experiment harness, renders it, and writes
 * the SVG atomically (temp file + rename). Exit code 0 on success — also
 * for header-only inputs, which render empty axes with a warning — and 2
 * for usage, schema, or I/O errors.
 */

import { readFileSync, renameSync, writeFileSync } from "node:fs";
import { extname } from "node:path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { SchemaError, readRdCsv, readRegretCsv } from "./csv.js";
import { renderRd, renderRegret } from "./render.js";
import type { GroupBy } from "./summary.js";

export function renderFile(
  kind: "regret" | "rd",
  inPath: string,
  outPath: string,
  groupBy: GroupBy,
): void {
  const extension = extname(outPath).toLowerCase();
  if (extension === ".png") {
    throw new SchemaError(
      "png output is not supported by this renderer; use an .svg output path",
    );
  }
  if (extension !== ".svg") {
    throw new SchemaError(`output extension must be .svg, got '${extension || "none"}'`);
  }

  const csvText = readFileSync(inPath, "utf-8");
  let svg: string;
  let rows: number;
  if (kind === "regret") {
    const records = readRegretCsv(csvText, inPath);
    rows = records.length;
    svg = renderRegret(records, groupBy);
  } else {
    const records = readRdCsv(csvText, inPath);
    rows = records.length;
    svg = renderRd(records);
  }
  if (rows === 0) {
    process.stderr.write(`warning: ${inPath} has no data rows; rendering empty axes\n`);
  }

  const tempPath = `${outPath}.tmp`;
  writeFileSync(tempPath, svg, "utf-8");
  renameSync(tempPath, outPath);
  process.stdout.write(`wrote ${outPath}\n`);
}

export function main(argv: string[]): number {
  const parser = yargs(argv)
    .scriptName("rdtargets-plots")
    .command("render", "render one experiment CSV to an SVG figure", (cmd) =>
      cmd
        .option("kind", {
          choices: ["regret", "rd"] as const,
          demandOption: true,
          describe: "input schema: per-period regret or rate-distortion points",
        })
        .option("in", {
          type: "string",
          demandOption: true,
          describe: "input CSV path",
        })
        .option("out", {
          type: "string",
          demandOption: true,
          describe: "output SVG path",
        })
        .option("group-by", {
          choices: ["agent", "param"] as const,
          default: "agent" as const,
          describe: "panel grouping for regret figures",
        }),
    )
    .demandCommand(1, "expected the 'render' command")
    .strict()
    .exitProcess(false)
    .fail((message, error) => {
      throw error ?? new SchemaError(message);
    });

  try {
    const args = parser.parseSync();
    renderFile(
      args.kind as "regret" | "rd",
      args.in as string,
      args.out as string,
      args["group-by"] as GroupBy,
    );
    return 0;
  } catch (error) {
    const message = error instanceof Error ? error.message : String(error);
    process.stderr.write(`error: ${message}\n`);
    return 2;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith("/cli.js");
if (invokedDirectly) {
  process.exit(main(hideBin(process.argv)));
}
