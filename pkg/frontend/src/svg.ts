export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Fixed-point coordinate, trimmed so SVG output stays byte-stable. */
export function fmt(n: number): string {
  const s = n.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export type Attrs = Record<string, string | number | undefined>;

export function el(name: string, attrs: Attrs, ...children: string[]): string {
  const parts = [`<${name}`];
  for (const [k, v] of Object.entries(attrs)) {
    if (v === undefined) continue;
    parts.push(` ${k}="${escapeXml(String(v))}"`);
  }
  if (children.length === 0) return parts.join("") + "/>";
  return parts.join("") + ">" + children.join("") + `</${name}>`;
}

export function text(x: number, y: number, content: string, attrs: Attrs = {}): string {
  return el(
    "text",
    { x: fmt(x), y: fmt(y), "font-family": "sans-serif", "font-size": 12, ...attrs },
    escapeXml(content),
  );
}

export function svgDocument(width: number, height: number, children: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    el("rect", { x: 0, y: 0, width, height, fill: "white" }) +
    "\n" +
    children.join("\n") +
    "\n</svg>\n"
  );
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}
