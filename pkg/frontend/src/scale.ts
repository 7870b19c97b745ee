export type ScaleKind = "linear" | "log";

export interface Scale {
  (value: number): number;
  kind: ScaleKind;
  domain: [number, number];
  range: [number, number];
  /** Whether a data value can be placed on this scale at all. */
  accepts(value: number): boolean;
}

/** Widen a degenerate or empty domain so every scale has nonzero extent. */
export function padDomain(lo: number, hi: number, kind: ScaleKind): [number, number] {
  if (!Number.isFinite(lo) || !Number.isFinite(hi)) {
    throw new Error(`cannot build a ${kind} scale over [${lo}, ${hi}]`);
  }
  if (kind === "log") {
    if (lo <= 0) throw new Error(`log scale needs a positive domain, got [${lo}, ${hi}]`);
    return lo === hi ? [lo / 2, hi * 2] : [lo, hi];
  }
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  return [lo, hi];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = padDomain(domain[0], domain[1], "linear");
  const f = ((v: number) => range[0] + ((v - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
  f.kind = "linear";
  f.domain = [d0, d1];
  f.range = range;
  f.accepts = (v) => Number.isFinite(v);
  return f;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = padDomain(domain[0], domain[1], "log");
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const f = ((v: number) => range[0] + ((Math.log10(v) - l0) / (l1 - l0)) * (range[1] - range[0])) as Scale;
  f.kind = "log";
  f.domain = [d0, d1];
  f.range = range;
  f.accepts = (v) => Number.isFinite(v) && v > 0;
  return f;
}

export function makeScale(kind: ScaleKind, domain: [number, number], range: [number, number]): Scale {
  return kind === "log" ? logScale(domain, range) : linearScale(domain, range);
}

/** Round-numbered ticks (1/2/5 times a power of ten) covering [lo, hi]. */
export function linearTicks(lo: number, hi: number, target = 6): number[] {
  if (lo === hi) return [lo];
  const span = hi - lo;
  const rawStep = span / Math.max(target - 1, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (mag * m >= rawStep) {
      step = mag * m;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Decade ticks for log axes; mantissa ticks 2..9 fill in short spans. */
export function logTicks(lo: number, hi: number): number[] {
  const first = Math.ceil(Math.log10(lo) - 1e-9);
  const last = Math.floor(Math.log10(hi) + 1e-9);
  const decades: number[] = [];
  for (let e = first; e <= last; e++) decades.push(Math.pow(10, e));
  if (decades.length >= 3) return decades;
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= last; e++) {
    for (const m of [1, 2, 5]) {
      const v = m * Math.pow(10, e);
      if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) ticks.push(v);
    }
  }
  return ticks.length > 0 ? ticks : [lo, hi];
}

export function ticksFor(scale: Scale): number[] {
  return scale.kind === "log"
    ? logTicks(scale.domain[0], scale.domain[1])
    : linearTicks(scale.domain[0], scale.domain[1]);
}

/** Compact tick label: plain decimals near 1, exponent form far away. */
export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e-3 && a < 1e5) {
    const s = v.toPrecision(6);
    return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
  }
  const e = Math.floor(Math.log10(a));
  const m = v / Math.pow(10, e);
  const mantissa = Math.abs(m - 1) < 1e-9 ? "" : `${m.toPrecision(3).replace(/\.?0+$/, "")}x`;
  return `${mantissa}1e${e}`;
}
