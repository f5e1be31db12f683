/**
 * CLI: node dist/cli.js --kind <ratios|convergence|corner|resolvent>
 *                       --input <artifact path> --output <figure.svg>
 *
 * Exit codes: 0 written, 2 bad arguments or schema mismatch (no file is
 * written in that case).
 */

import { writeFileSync } from "node:fs";

import { FigureKind, FigureSpec, renderFigure } from "./plots.js";
import { SchemaError } from "./schema.js";

const KINDS: FigureKind[] = ["ratios", "convergence", "corner", "resolvent"];

function parseArgs(argv: string[]): FigureSpec {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new SchemaError(`malformed argument pair near "${key}"`);
    }
    opts.set(key.slice(2), value);
  }
  const kind = opts.get("kind") as FigureKind | undefined;
  const input = opts.get("input");
  const output = opts.get("output");
  if (!kind || !KINDS.includes(kind)) {
    throw new SchemaError(`--kind must be one of ${KINDS.join(", ")}`);
  }
  if (!input || !output) {
    throw new SchemaError("--input and --output are required");
  }
  return { kind, input, output };
}

export function main(argv: string[]): number {
  let spec: FigureSpec;
  try {
    spec = parseArgs(argv);
  } catch (err) {
    console.error(`argument error: ${(err as Error).message}`);
    return 2;
  }
  try {
    const svg = renderFigure(spec);
    writeFileSync(spec.output, svg);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    throw err;
  }
  console.log(`wrote ${spec.output}`);
  return 0;
}

process.exit(main(process.argv.slice(2)));
