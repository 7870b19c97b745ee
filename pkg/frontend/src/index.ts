export { CsvTable, PlotInputError, columnIndex, numberColumn, readCsvTable, requireColumns, stringColumn } from "./csv.js";
export { Scale, ScaleKind, formatTick, linearScale, linearTicks, logScale, logTicks, makeScale, padDomain, ticksFor } from "./scale.js";
export { RenderOptions, renderCcdf, renderDensityBand, renderIefBox, stepPathData } from "./render.js";
export { FIGURE_KINDS, FigureKind, PlotJob, renderJob, runJob } from "./job.js";
