#!/usr/bin/env node
// plots <figure-kind> --in <csv...> --out <img>
import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { FIGURE_KINDS } from "./figures.js";
import { renderFigure, type NamedCsv } from "./render.js";

export function main(argv: string[]): number {
  let args;
  try {
    args = yargs(argv)
      .scriptName("plots")
      .command("$0 <kind>", "render one figure from its CSV bundle", (y) =>
        y
          .positional("kind", {
            type: "string",
            choices: FIGURE_KINDS,
            describe: "which figure to render",
          })
          .option("in", {
            type: "string",
            array: true,
            demandOption: true,
            describe: "input CSV files, in bundle order",
          })
          .option("out", {
            type: "string",
            demandOption: true,
            describe: "output SVG path",
          }),
      )
      .strict()
      .exitProcess(false)
      .fail((msg, err) => {
        throw err ?? new Error(msg);
      })
      .parseSync();
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 2;
  }
  if (args.help !== undefined) return 0;

  try {
    const inputs: NamedCsv[] = (args.in as string[]).map((path) => ({
      name: path,
      text: readFileSync(path, "utf8"),
    }));
    const svg = renderFigure(args.kind as string, inputs);
    writeFileSync(args.out as string, svg);
    console.error(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

const entry = process.argv[1];
if (entry !== undefined && import.meta.url === pathToFileURL(entry).href) {
  process.exit(main(hideBin(process.argv)));
}
