/**
 * Minimal deterministic SVG assembly. Coordinates are formatted with a
 * fixed two-decimal rule so the emitted markup is a stable byte string for
 * identical inputs, which is what the golden-image tests compare.
 */

export function fmt(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export type Attrs = Record<string, string | number>;

function attrText(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? fmt(v) : v}"`)
    .join("");
}

export class SvgBuilder {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    );
  }

  rect(x: number, y: number, w: number, h: number, attrs: Attrs): void {
    this.parts.push(`<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}"${attrText(attrs)}/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, attrs: Attrs): void {
    this.parts.push(`<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}"${attrText(attrs)}/>`);
  }

  path(d: string, attrs: Attrs): void {
    this.parts.push(`<path d="${d}"${attrText(attrs)}/>`);
  }

  polyline(points: Array<[number, number]>, attrs: Attrs): void {
    const text = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${text}"${attrText(attrs)}/>`);
  }

  circle(cx: number, cy: number, r: number, attrs: Attrs): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}"${attrText(attrs)}/>`);
  }

  text(x: number, y: number, content: string, attrs: Attrs): void {
    this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}"${attrText(attrs)}>${esc(content)}</text>`);
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

/** Tick positions in 1-2-5 steps covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  const first = Math.ceil(lo / step - 1e-9) * step;
  for (let v = first; v <= hi + 1e-9 * step; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Compact tick label: trims trailing zeros, keeps exponents readable. */
export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(0).replace("e+", "e");
  }
  return String(Number(v.toPrecision(10)));
}
