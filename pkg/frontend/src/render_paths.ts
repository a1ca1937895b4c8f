/** Render a grid of simulated sample paths from a figure-spec document.
 *
 *  Usage: node render_paths.js --spec figures_spec.json --out fig.svg
 *
 *  The spec lists panels {file, alpha, gamma, n_paths}; each file is an
 *  ensemble CSV emitted by the simulator.  Panels must be in the
 *  dependent-increment regime (alpha > 1 + gamma).  Output is SVG and is
 *  byte-identical for identical inputs.
 */

import * as fs from "fs";
import * as path from "path";

import { parseEnsembleCsv, Ensemble } from "./csv";
import { PALETTE, axes, document as svgDocument, linearScale, polyline,
         text } from "./svg";

export interface PanelSpec {
  file: string;
  alpha: number;
  gamma: number;
  n_paths: number;
}

export interface FigureSpec {
  panels: PanelSpec[];
}

export function validateSpec(spec: FigureSpec, baseDir: string): void {
  if (!spec.panels || spec.panels.length === 0) {
    throw new Error("figure spec has an empty panel list");
  }
  for (const p of spec.panels) {
    if (!(p.alpha > 1 + p.gamma)) {
      throw new Error(
        `panel ${p.file}: alpha=${p.alpha} must exceed 1+gamma=${1 + p.gamma}`);
    }
    if (!fs.existsSync(path.join(baseDir, p.file))) {
      throw new Error(`panel file not found: ${p.file}`);
    }
  }
}

function renderPanel(ens: Ensemble, p: PanelSpec, x0: number, y0: number,
                     w: number, h: number): string[] {
  const kDraw = Math.max(1, Math.min(p.n_paths, ens.paths.length));
  const rows = ens.paths.slice(0, kDraw);
  let lo = Infinity;
  let hi = -Infinity;
  for (const row of rows) {
    for (const v of row) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = 0.05 * (hi - lo);
  const inner = { x0: x0 + 42, y0: y0 + 24, w: w - 54, h: h - 52 };
  const xs = linearScale(ens.times[0], ens.times[ens.times.length - 1],
                         inner.x0, inner.x0 + inner.w);
  const ys = linearScale(lo - pad, hi + pad, inner.y0 + inner.h, inner.y0);
  const parts = axes(inner, xs, ys);
  rows.forEach((row, i) => {
    parts.push(polyline(ens.times.map(xs), row.map(ys),
                        PALETTE[i % PALETTE.length], 1.1));
  });
  parts.push(text(inner.x0 + inner.w / 2, y0 + 14,
                  `alpha = ${p.alpha}, gamma = ${p.gamma}`, 12, "middle"));
  return parts;
}

export function renderPathsSvg(spec: FigureSpec, baseDir: string,
                               width = 960, height = 720): string {
  validateSpec(spec, baseDir);
  const cols = 2;
  const rowsN = Math.ceil(spec.panels.length / cols);
  const pw = width / cols;
  const ph = height / rowsN;
  const parts: string[] = [];
  spec.panels.forEach((p, i) => {
    const ensText = fs.readFileSync(path.join(baseDir, p.file), "utf-8");
    const ens = parseEnsembleCsv(ensText, p.file);
    const cx = (i % cols) * pw;
    const cy = Math.floor(i / cols) * ph;
    parts.push(...renderPanel(ens, p, cx, cy, pw, ph));
  });
  return svgDocument(width, height, parts);
}

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) {
      throw new Error(`bad argument: ${argv[i]}`);
    }
    out.set(argv[i].slice(2), argv[i + 1]);
  }
  return out;
}

export function main(argv: string[]): number {
  let args: Map<string, string>;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err));
    return 2;
  }
  const specPath = args.get("spec");
  const outPath = args.get("out");
  if (!specPath || !outPath) {
    console.error("usage: render_paths --spec figures_spec.json --out fig.svg");
    return 2;
  }
  try {
    const spec = JSON.parse(fs.readFileSync(specPath, "utf-8")) as FigureSpec;
    const svg = renderPathsSvg(spec, path.dirname(specPath));
    fs.writeFileSync(outPath, svg);
  } catch (err) {
    console.error(String(err));
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
