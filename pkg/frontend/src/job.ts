import { writeFileSync } from "node:fs";
import { PlotInputError, readCsvTable } from "./csv.js";
import { RenderOptions, renderCcdf, renderDensityBand, renderIefBox } from "./render.js";

export type FigureKind = "ccdf" | "density-band" | "ief-box";

export const FIGURE_KINDS: FigureKind[] = ["ccdf", "density-band", "ief-box"];

export interface PlotJob {
  kind: FigureKind;
  inputs: { path: string; label?: string }[];
  output: string;
  options: RenderOptions;
}

/** Render a job to an SVG string. Pure apart from reading the input CSVs. */
export function renderJob(job: PlotJob): string {
  if (job.inputs.length === 0) {
    throw new PlotInputError("a plot job needs at least one input CSV");
  }
  if (job.kind !== "ccdf" && job.inputs.length !== 1) {
    throw new PlotInputError(`${job.kind} takes exactly one input CSV, got ${job.inputs.length}`);
  }
  switch (job.kind) {
    case "ccdf":
      return renderCcdf(
        job.inputs.map((i) => ({ table: readCsvTable(i.path), label: i.label })),
        job.options,
      );
    case "density-band":
      return renderDensityBand(readCsvTable(job.inputs[0].path), job.options);
    case "ief-box":
      return renderIefBox(readCsvTable(job.inputs[0].path), job.options);
  }
}

/** Render and write; nothing is written when rendering fails. */
export function runJob(job: PlotJob): void {
  const svg = renderJob(job);
  writeFileSync(job.output, svg);
}
