/** Minimal deterministic SVG assembly: fixed-precision coordinates, no
 *  timestamps, no randomness, so identical inputs give identical bytes. */

export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

/** Shortest round-trip decimal for tick labels. */
export function label(x: number): string {
  const a = Math.abs(x);
  if (a !== 0 && (a >= 1e5 || a < 1e-3)) return x.toExponential(1);
  return String(Math.round(x * 1e6) / 1e6);
}

export interface Scale {
  (v: number): number;
  ticks: number[];
}

export function linearScale(lo: number, hi: number, outLo: number,
                            outHi: number): Scale {
  if (hi <= lo) hi = lo + 1;
  const f = ((v: number) =>
    outLo + ((v - lo) / (hi - lo)) * (outHi - outLo)) as Scale;
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / 4)));
  const mult = span / step > 8 ? 2 : 1;
  const ticks: number[] = [];
  const start = Math.ceil(lo / (step * mult)) * step * mult;
  for (let v = start; v <= hi + 1e-12 * span; v += step * mult) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  f.ticks = ticks;
  return f;
}

export function log10Scale(lo: number, hi: number, outLo: number,
                           outHi: number): Scale {
  if (lo <= 0) throw new Error("log scale needs positive domain");
  const la = Math.log10(lo);
  const lb = Math.log10(hi);
  const lin = linearScale(la, lb, outLo, outHi);
  const f = ((v: number) => lin(Math.log10(v))) as Scale;
  const ticks: number[] = [];
  for (let e = Math.ceil(la - 1e-9); e <= lb + 1e-9; e += 1) {
    ticks.push(Math.pow(10, e));
  }
  f.ticks = ticks;
  return f;
}

export const PALETTE = ["#1f5fa8", "#c44e52", "#3d8c40", "#8172b2",
                        "#b8860b", "#4aa6b5"];

export function polyline(xs: number[], ys: number[], stroke: string,
                         width = 1.0, dash = ""): string {
  const pts = xs.map((x, i) => `${fmt(x)},${fmt(ys[i])}`).join(" ");
  const d = dash ? ` stroke-dasharray="${dash}"` : "";
  return `<polyline fill="none" stroke="${stroke}" stroke-width="${width}"`
    + `${d} points="${pts}"/>`;
}

export function text(x: number, y: number, content: string, size = 11,
                     anchor = "start"): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" font-family="Helvetica,Arial,`
    + `sans-serif" font-size="${size}" text-anchor="${anchor}">`
    + `${content}</text>`;
}

export function line(x1: number, y1: number, x2: number, y2: number,
                     stroke = "#444444", width = 0.75): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" `
    + `y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${width}"/>`;
}

export function circle(x: number, y: number, r: number,
                       fill: string): string {
  return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(r)}" `
    + `fill="${fill}"/>`;
}

export interface Frame {
  x0: number;
  y0: number;
  w: number;
  h: number;
}

/** Axis box with ticks and labels; returns SVG fragments. */
export function axes(frame: Frame, xs: Scale, ys: Scale,
                     logX = false): string[] {
  const out: string[] = [];
  const { x0, y0, w, h } = frame;
  out.push(`<rect x="${fmt(x0)}" y="${fmt(y0)}" width="${fmt(w)}" `
    + `height="${fmt(h)}" fill="none" stroke="#222222" `
    + `stroke-width="1"/>`);
  for (const t of xs.ticks) {
    const px = xs(t);
    if (px < x0 - 0.5 || px > x0 + w + 0.5) continue;
    out.push(line(px, y0 + h, px, y0 + h + 4));
    const lab = logX ? `1e${Math.round(Math.log10(t))}` : label(t);
    out.push(text(px, y0 + h + 15, lab, 10, "middle"));
  }
  for (const t of ys.ticks) {
    const py = ys(t);
    if (py < y0 - 0.5 || py > y0 + h + 0.5) continue;
    out.push(line(x0 - 4, py, x0, py));
    out.push(text(x0 - 6, py + 3, label(t), 10, "end"));
  }
  return out;
}

export function document(width: number, height: number,
                         children: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" `
    + `height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    ...children,
    "</svg>",
    "",
  ].join("\n");
}
