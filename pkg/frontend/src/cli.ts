#!/usr/bin/env node
import { basename } from "node:path";
import { parseArgs } from "node:util";
import { PlotInputError } from "./csv.js";
import { FIGURE_KINDS, FigureKind, PlotJob, runJob } from "./job.js";
import { ScaleKind } from "./scale.js";

const USAGE = `usage: abcdoo-plot <kind> --input FILE.csv [--input FILE.csv ...] --output FIG.svg [options]

kinds:
  ccdf           step plot of one or more x,ccdf tables (log-log by default)
  density-band   quantile band with median line from an x,series,lo..hi table
  ief-box        grouped boxes from a memberships,rank,lo..hi table

options:
  --input PATH        input CSV (repeatable for ccdf)
  --label NAME        series label for the matching --input (repeatable)
  --output PATH       output SVG path (required)
  --title TEXT        figure title
  --x-label TEXT      x axis label
  --y-label TEXT      y axis label
  --x-scale KIND      linear | log (default: log for ccdf, linear otherwise)
  --y-scale KIND      linear | log (default: log for ccdf, linear otherwise)
  --width PX          figure width (default 640)
  --height PX         figure height (default 440)
  --help              show this message
`;

function fail(message: string): never {
  process.stderr.write(`error: ${message}\n`);
  process.exit(2);
}

function parseScale(value: string | undefined, flag: string): ScaleKind | undefined {
  if (value === undefined) return undefined;
  if (value === "linear" || value === "log") return value;
  fail(`${flag} must be "linear" or "log", got "${value}"`);
}

function parseSize(value: string | undefined, flag: string): number | undefined {
  if (value === undefined) return undefined;
  const n = Number(value);
  if (!Number.isFinite(n) || n <= 0) fail(`${flag} must be a positive number, got "${value}"`);
  return n;
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        input: { type: "string", multiple: true },
        label: { type: "string", multiple: true },
        output: { type: "string" },
        title: { type: "string" },
        "x-label": { type: "string" },
        "y-label": { type: "string" },
        "x-scale": { type: "string" },
        "y-scale": { type: "string" },
        width: { type: "string" },
        height: { type: "string" },
        help: { type: "boolean" },
      },
    });
  } catch (err) {
    fail((err as Error).message);
  }
  const { values, positionals } = parsed;
  if (values.help) {
    process.stdout.write(USAGE);
    return 0;
  }
  if (positionals.length !== 1) {
    fail(`expected exactly one figure kind, got: ${positionals.join(" ") || "(none)"}\n\n${USAGE}`);
  }
  const kind = positionals[0];
  if (!(FIGURE_KINDS as string[]).includes(kind)) {
    fail(`unknown figure kind "${kind}"; expected one of: ${FIGURE_KINDS.join(", ")}`);
  }
  const inputs = values.input ?? [];
  if (inputs.length === 0) fail("at least one --input is required");
  const labels = values.label ?? [];
  if (labels.length > inputs.length) {
    fail(`${labels.length} --label flags for ${inputs.length} --input flags`);
  }
  if (!values.output) fail("--output is required");

  const job: PlotJob = {
    kind: kind as FigureKind,
    inputs: inputs.map((path, i) => ({
      path,
      label: labels[i] ?? basename(path).replace(/\.csv$/i, ""),
    })),
    output: values.output,
    options: {
      title: values.title,
      xLabel: values["x-label"],
      yLabel: values["y-label"],
      xScale: parseScale(values["x-scale"], "--x-scale"),
      yScale: parseScale(values["y-scale"], "--y-scale"),
      width: parseSize(values.width, "--width"),
      height: parseSize(values.height, "--height"),
    },
  };

  try {
    runJob(job);
  } catch (err) {
    if (err instanceof PlotInputError) fail(err.message);
    throw err;
  }
  process.stdout.write(`wrote ${job.output}\n`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(basename(process.argv[1]));
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
