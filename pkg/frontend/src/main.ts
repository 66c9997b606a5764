#!/usr/bin/env node
/**
 * dcflow figure renderer.
 *
 *   node dist/main.js --kind evolution --in snapshots.csv   --out evolution.svg
 *   node dist/main.js --kind decay     --in diagnostics.csv --rho0 3 --out decay.svg
 *   node dist/main.js --kind table     --in convergence.csv --out table.md
 *
 * decay accepts optional --cg and --l0 overrides; both default to values
 * derived from the t=0 diagnostics row. Inputs are read-only; exit code
 * 1 on malformed input or bad flags.
 */
import { readFile, writeFile } from "fs/promises";

import { CsvFormatError } from "./csv.js";
import { renderDecay } from "./decay.js";
import { renderEvolution } from "./evolution.js";
import { renderTable } from "./table.js";

interface CliArgs {
  kind: string;
  input: string;
  output: string;
  rho0?: number;
  cg?: number;
  l0?: number;
}

function parseArgs(argv: string[]): CliArgs {
  const args: Partial<CliArgs> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`missing value for ${flag}`);
    }
    switch (flag) {
      case "--kind":
        args.kind = value;
        break;
      case "--in":
        args.input = value;
        break;
      case "--out":
        args.output = value;
        break;
      case "--rho0":
      case "--cg":
      case "--l0": {
        const num = Number(value);
        if (!Number.isFinite(num) || num <= 0) {
          throw new Error(`${flag} must be a positive number, got '${value}'`);
        }
        args[flag.slice(2) as "rho0" | "cg" | "l0"] = num;
        break;
      }
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!args.kind || !args.input || !args.output) {
    throw new Error("--kind, --in and --out are required");
  }
  return args as CliArgs;
}

export async function runCli(argv: string[]): Promise<void> {
  const args = parseArgs(argv);
  const text = await readFile(args.input, "utf-8");
  let rendered: string;
  switch (args.kind) {
    case "evolution":
      rendered = renderEvolution(text, args.input);
      break;
    case "decay": {
      if (args.rho0 === undefined) {
        throw new Error("--rho0 is required for decay figures");
      }
      const result = renderDecay(text, args.input, {
        rho0: args.rho0,
        cg: args.cg,
        l0: args.l0,
      });
      if (result.droppedRows > 0) {
        console.error(`note: dropped ${result.droppedRows} zero-area rows`);
      }
      rendered = result.svg;
      break;
    }
    case "table":
      rendered = renderTable(text, args.input);
      break;
    default:
      throw new Error(`unknown kind '${args.kind}'`);
  }
  await writeFile(args.output, rendered, "utf-8");
}

const isMain =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;

if (isMain) {
  runCli(process.argv.slice(2)).catch((error) => {
    const message =
      error instanceof CsvFormatError ? `bad input: ${error.message}` : String(error?.message ?? error);
    console.error(message);
    process.exit(1);
  });
}
