import { CsvTable, PlotInputError, numberColumn, requireColumns, stringColumn } from "./csv.js";
import { Scale, ScaleKind, formatTick, makeScale, padDomain, ticksFor } from "./scale.js";
import { el, fmt, seriesColor, svgDocument, text } from "./svg.js";

export interface RenderOptions {
  width?: number;
  height?: number;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  xScale?: ScaleKind;
  yScale?: ScaleKind;
}

export const DEFAULT_WIDTH = 640;
export const DEFAULT_HEIGHT = 440;

interface Frame {
  x: Scale;
  y: Scale;
  parts: string[];
  left: number;
  right: number;
  top: number;
  bottom: number;
  width: number;
  height: number;
}

function buildFrame(
  o: RenderOptions,
  xKind: ScaleKind,
  yKind: ScaleKind,
  xDomain: [number, number],
  yDomain: [number, number],
  defaults: { xLabel: string; yLabel: string },
): Frame {
  const width = o.width ?? DEFAULT_WIDTH;
  const height = o.height ?? DEFAULT_HEIGHT;
  const left = 64;
  const right = width - 20;
  const top = o.title ? 44 : 22;
  const bottom = height - 54;
  // SVG y grows downward, so the y range is flipped.
  const x = makeScale(xKind, padDomain(xDomain[0], xDomain[1], xKind), [left, right]);
  const y = makeScale(yKind, padDomain(yDomain[0], yDomain[1], yKind), [bottom, top]);

  const parts: string[] = [];
  for (const t of ticksFor(x)) {
    const px = x(t);
    parts.push(el("line", { x1: fmt(px), y1: fmt(top), x2: fmt(px), y2: fmt(bottom), stroke: "#dddddd" }));
    parts.push(text(px, bottom + 16, formatTick(t), { "text-anchor": "middle", fill: "#333333" }));
  }
  for (const t of ticksFor(y)) {
    const py = y(t);
    parts.push(el("line", { x1: fmt(left), y1: fmt(py), x2: fmt(right), y2: fmt(py), stroke: "#dddddd" }));
    parts.push(text(left - 6, py + 4, formatTick(t), { "text-anchor": "end", fill: "#333333" }));
  }
  parts.push(el("rect", { x: fmt(left), y: fmt(top), width: fmt(right - left), height: fmt(bottom - top), fill: "none", stroke: "#333333" }));
  parts.push(text((left + right) / 2, height - 16, o.xLabel ?? defaults.xLabel, { "text-anchor": "middle" }));
  parts.push(
    el(
      "g",
      { transform: `translate(16 ${fmt((top + bottom) / 2)}) rotate(-90)` },
      text(0, 0, o.yLabel ?? defaults.yLabel, { "text-anchor": "middle" }),
    ),
  );
  if (o.title) {
    parts.push(text(width / 2, 24, o.title, { "text-anchor": "middle", "font-size": 15, "font-weight": "bold" }));
  }
  return { x, y, parts, left, right, top, bottom, width, height };
}

function legend(frame: Frame, entries: { label: string; color: string }[]): void {
  if (entries.length === 0) return;
  const rowH = 16;
  const x0 = frame.right - 150;
  const y0 = frame.top + 10;
  frame.parts.push(
    el("rect", {
      x: fmt(x0 - 8),
      y: fmt(y0 - 12),
      width: 150,
      height: entries.length * rowH + 8,
      fill: "white",
      "fill-opacity": 0.85,
      stroke: "#BBBBBB",
    }),
  );
  entries.forEach((e, i) => {
    const y = y0 + i * rowH;
    frame.parts.push(el("line", { x1: fmt(x0), y1: fmt(y), x2: fmt(x0 + 20), y2: fmt(y), stroke: e.color, "stroke-width": 2.5 }));
    frame.parts.push(text(x0 + 26, y + 4, e.label, { "font-size": 11 }));
  });
}

function finish(frame: Frame, comments: string[]): string {
  const body = comments.map((c) => `<!-- ${c} -->`).concat(frame.parts);
  return svgDocument(frame.width, frame.height, body);
}

// ---------------------------------------------------------------- ccdf

export interface CcdfInput {
  table: CsvTable;
  label?: string;
}

interface CcdfPoints {
  label: string;
  xs: number[];
  ys: number[];
  dropped: number;
}

/**
 * Step path for a tail distribution: each support point holds its level
 * until the next one, and the last level runs out to the domain edge.
 */
export function stepPathData(xs: number[], ys: number[], x: Scale, y: Scale, xEnd: number): string {
  const cmds = [`M ${fmt(x(xs[0]))} ${fmt(y(ys[0]))}`];
  for (let i = 1; i < xs.length; i++) {
    cmds.push(`H ${fmt(x(xs[i]))}`);
    cmds.push(`V ${fmt(y(ys[i]))}`);
  }
  cmds.push(`H ${fmt(x(xEnd))}`);
  return cmds.join(" ");
}

export function renderCcdf(inputs: CcdfInput[], options: RenderOptions = {}): string {
  if (inputs.length === 0) throw new PlotInputError("ccdf figure needs at least one input CSV");
  const xKind = options.xScale ?? "log";
  const yKind = options.yScale ?? "log";
  const acceptX = (v: number) => xKind !== "log" || v > 0;
  const acceptY = (v: number) => yKind !== "log" || v > 0;

  const series: CcdfPoints[] = inputs.map(({ table, label }) => {
    requireColumns(table, ["x", "ccdf"]);
    const rawX = numberColumn(table, "x");
    const rawY = numberColumn(table, "ccdf");
    const xs: number[] = [];
    const ys: number[] = [];
    for (let i = 0; i < rawX.length; i++) {
      if (acceptX(rawX[i]) && acceptY(rawY[i])) {
        xs.push(rawX[i]);
        ys.push(rawY[i]);
      }
    }
    // support arrives sorted from the writer, but order is cheap to restore
    const order = xs.map((_, i) => i).sort((a, b) => xs[a] - xs[b]);
    return {
      label: label ?? table.path,
      xs: order.map((i) => xs[i]),
      ys: order.map((i) => ys[i]),
      dropped: rawX.length - xs.length,
    };
  });

  const drawable = series.filter((s) => s.xs.length > 0);
  if (drawable.length === 0) {
    throw new PlotInputError(`no drawable points on ${xKind}/${yKind} axes in ${inputs.map((i) => i.table.path).join(", ")}`);
  }
  const allX = drawable.flatMap((s) => s.xs);
  const allY = drawable.flatMap((s) => s.ys);
  const frame = buildFrame(
    options,
    xKind,
    yKind,
    [Math.min(...allX), Math.max(...allX)],
    [Math.min(...allY), Math.max(...allY)],
    { xLabel: "x", yLabel: "ccdf" },
  );

  const comments: string[] = [];
  drawable.forEach((s, i) => {
    const color = seriesColor(i);
    frame.parts.push(
      el("path", {
        class: "ccdf-line",
        d: stepPathData(s.xs, s.ys, frame.x, frame.y, frame.x.domain[1]),
        fill: "none",
        stroke: color,
        "stroke-width": 1.8,
      }),
    );
    for (let p = 0; p < s.xs.length; p++) {
      frame.parts.push(
        el("circle", { class: "ccdf-point", cx: fmt(frame.x(s.xs[p])), cy: fmt(frame.y(s.ys[p])), r: 2.6, fill: color }),
      );
    }
    if (s.dropped > 0) {
      comments.push(`${s.label}: ${s.dropped} point(s) outside the ${xKind}/${yKind} domain omitted`);
    }
  });
  if (series.length > 1) {
    legend(frame, series.map((s, i) => ({ label: s.label, color: seriesColor(i) })));
  }
  return finish(frame, comments);
}

// ---------------------------------------------------------------- density-band

const BAND_COLUMNS = ["x", "series", "lo", "q25", "median", "q75", "hi", "count"];

interface BandSeries {
  name: string;
  x: number[];
  lo: number[];
  q25: number[];
  median: number[];
  q75: number[];
  hi: number[];
}

export function renderDensityBand(table: CsvTable, options: RenderOptions = {}): string {
  requireColumns(table, BAND_COLUMNS);
  const xKind = options.xScale ?? "linear";
  const yKind = options.yScale ?? "linear";
  const xs = numberColumn(table, "x");
  const names = stringColumn(table, "series");
  const cols = {
    lo: numberColumn(table, "lo"),
    q25: numberColumn(table, "q25"),
    median: numberColumn(table, "median"),
    q75: numberColumn(table, "q75"),
    hi: numberColumn(table, "hi"),
  };
  numberColumn(table, "count");

  const bySeries = new Map<string, number[]>();
  names.forEach((name, i) => {
    const rows = bySeries.get(name) ?? [];
    rows.push(i);
    bySeries.set(name, rows);
  });
  const series: BandSeries[] = [...bySeries.entries()].map(([name, rows]) => {
    rows.sort((a, b) => xs[a] - xs[b]);
    return {
      name,
      x: rows.map((i) => xs[i]),
      lo: rows.map((i) => cols.lo[i]),
      q25: rows.map((i) => cols.q25[i]),
      median: rows.map((i) => cols.median[i]),
      q75: rows.map((i) => cols.q75[i]),
      hi: rows.map((i) => cols.hi[i]),
    };
  });

  // Bands cannot be partially clipped without lying about the quartiles,
  // so a value the scale cannot place is an error rather than an omission.
  for (const s of series) {
    for (const [col, values] of [["x", s.x], ["lo", s.lo], ["hi", s.hi]] as const) {
      const scaleKind = col === "x" ? xKind : yKind;
      if (scaleKind === "log" && values.some((v) => v <= 0)) {
        throw new PlotInputError(
          `series "${s.name}" in ${table.path} has non-positive "${col}" values; a log axis cannot show them`,
        );
      }
    }
  }

  const frame = buildFrame(
    options,
    xKind,
    yKind,
    [Math.min(...xs), Math.max(...xs)],
    [Math.min(...cols.lo), Math.max(...cols.hi)],
    { xLabel: "x", yLabel: "density" },
  );

  series.forEach((s, i) => {
    const color = seriesColor(i);
    const forward = s.x.map((v, p) => `${fmt(frame.x(v))},${fmt(frame.y(s.q25[p]))}`);
    const backward = [...s.x.keys()].reverse().map((p) => `${fmt(frame.x(s.x[p]))},${fmt(frame.y(s.q75[p]))}`);
    frame.parts.push(
      el("polygon", { class: "band", points: [...forward, ...backward].join(" "), fill: color, "fill-opacity": 0.25, stroke: "none" }),
    );
    for (const [cls, values, dash] of [
      ["whisker-lo", s.lo, "4 3"],
      ["whisker-hi", s.hi, "4 3"],
      ["median-line", s.median, undefined],
    ] as const) {
      frame.parts.push(
        el("polyline", {
          class: cls,
          points: s.x.map((v, p) => `${fmt(frame.x(v))},${fmt(frame.y(values[p]))}`).join(" "),
          fill: "none",
          stroke: color,
          "stroke-width": cls === "median-line" ? 2.2 : 1,
          "stroke-dasharray": dash,
        }),
      );
    }
    for (let p = 0; p < s.x.length; p++) {
      frame.parts.push(
        el("circle", { class: "median-point", cx: fmt(frame.x(s.x[p])), cy: fmt(frame.y(s.median[p])), r: 3, fill: color }),
      );
    }
  });
  legend(frame, series.map((s, i) => ({ label: s.name, color: seriesColor(i) })));
  return finish(frame, []);
}

// ---------------------------------------------------------------- ief-box

const BOX_COLUMNS = ["memberships", "rank", "lo", "q25", "median", "q75", "hi", "count"];

export function renderIefBox(table: CsvTable, options: RenderOptions = {}): string {
  requireColumns(table, BOX_COLUMNS);
  const memberships = numberColumn(table, "memberships");
  const ranks = numberColumn(table, "rank");
  const cols = {
    lo: numberColumn(table, "lo"),
    q25: numberColumn(table, "q25"),
    median: numberColumn(table, "median"),
    q75: numberColumn(table, "q75"),
    hi: numberColumn(table, "hi"),
  };
  numberColumn(table, "count");
  if (options.xScale === "log") {
    throw new PlotInputError("grouped box figures use a categorical x axis; log x is not supported");
  }
  const yKind = options.yScale ?? "linear";
  if (yKind === "log" && cols.lo.some((v) => v <= 0)) {
    throw new PlotInputError(`${table.path} has non-positive "lo" values; a log axis cannot show them`);
  }

  const groups = [...new Set(memberships)].sort((a, b) => a - b);
  const maxRank = Math.max(...ranks);

  const o = { ...options };
  const width = o.width ?? DEFAULT_WIDTH;
  const height = o.height ?? DEFAULT_HEIGHT;
  const frame = buildFrameCategorical(o, width, height, groups, yKind, [Math.min(...cols.lo), Math.max(...cols.hi)]);

  const slot = (frame.right - frame.left) / groups.length;
  const boxW = Math.min((slot * 0.8) / maxRank, 26);
  for (let r = 0; r < memberships.length; r++) {
    const g = groups.indexOf(memberships[r]);
    const centerOfSlot = frame.left + slot * (g + 0.5);
    const offset = (ranks[r] - (maxRank + 1) / 2) * (boxW + 4);
    const cx = centerOfSlot + offset;
    const color = seriesColor(ranks[r] - 1);
    const y = frame.y;
    frame.parts.push(el("line", { class: "box-whisker", x1: fmt(cx), y1: fmt(y(cols.lo[r])), x2: fmt(cx), y2: fmt(y(cols.hi[r])), stroke: color }));
    for (const cap of [cols.lo[r], cols.hi[r]]) {
      frame.parts.push(el("line", { x1: fmt(cx - boxW / 4), y1: fmt(y(cap)), x2: fmt(cx + boxW / 4), y2: fmt(y(cap)), stroke: color }));
    }
    frame.parts.push(
      el("rect", {
        class: "box",
        x: fmt(cx - boxW / 2),
        y: fmt(y(cols.q75[r])),
        width: fmt(boxW),
        height: fmt(Math.max(y(cols.q25[r]) - y(cols.q75[r]), 0.5)),
        fill: color,
        "fill-opacity": 0.45,
        stroke: color,
      }),
    );
    frame.parts.push(
      el("line", { class: "box-median", x1: fmt(cx - boxW / 2), y1: fmt(y(cols.median[r])), x2: fmt(cx + boxW / 2), y2: fmt(y(cols.median[r])), stroke: color, "stroke-width": 2.4 }),
    );
  }
  if (maxRank > 1) {
    legend(frame, Array.from({ length: maxRank }, (_, i) => ({ label: `rank ${i + 1}`, color: seriesColor(i) })));
  }
  return finish(frame, []);
}

function buildFrameCategorical(
  o: RenderOptions,
  width: number,
  height: number,
  groups: number[],
  yKind: ScaleKind,
  yDomain: [number, number],
): Frame {
  const left = 64;
  const right = width - 20;
  const top = o.title ? 44 : 22;
  const bottom = height - 54;
  const y = makeScale(yKind, padDomain(yDomain[0], yDomain[1], yKind), [bottom, top]);
  const x = makeScale("linear", [0, 1], [left, right]);

  const parts: string[] = [];
  for (const t of ticksFor(y)) {
    const py = y(t);
    parts.push(el("line", { x1: fmt(left), y1: fmt(py), x2: fmt(right), y2: fmt(py), stroke: "#dddddd" }));
    parts.push(text(left - 6, py + 4, formatTick(t), { "text-anchor": "end", fill: "#333333" }));
  }
  const slot = (right - left) / groups.length;
  groups.forEach((g, i) => {
    parts.push(text(left + slot * (i + 0.5), bottom + 16, String(g), { class: "group-label", "text-anchor": "middle", fill: "#333333" }));
  });
  parts.push(el("rect", { x: fmt(left), y: fmt(top), width: fmt(right - left), height: fmt(bottom - top), fill: "none", stroke: "#333333" }));
  parts.push(text((left + right) / 2, height - 16, o.xLabel ?? "memberships", { "text-anchor": "middle" }));
  parts.push(
    el("g", { transform: `translate(16 ${fmt((top + bottom) / 2)}) rotate(-90)` }, text(0, 0, o.yLabel ?? "value", { "text-anchor": "middle" })),
  );
  if (o.title) {
    parts.push(text(width / 2, 24, o.title, { "text-anchor": "middle", "font-size": 15, "font-weight": "bold" }));
  }
  return { x, y, parts, left, right, top, bottom, width, height };
}
