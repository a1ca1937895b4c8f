/** Render a convergence diagnostic |I(T)/I_inf - 1| against T (log-x).
 *
 *  Usage: node render_convergence.js --csv exponent.csv --out fig.svg
 *                                    [--overlay other.csv]
 *
 *  The overlay lets two regimes be compared on one set of axes (e.g. a
 *  polynomial-rate regime against the logarithmic critical case).
 */

import * as fs from "fs";

import { ExponentRow, parseExponentCsv } from "./csv";
import { PALETTE, axes, circle, document as svgDocument, line, log10Scale,
         linearScale, polyline, text } from "./svg";

export function renderConvergenceSvg(curves: ExponentRow[][],
                                     width = 720, height = 480): string {
  if (curves.length === 0 || curves.some((c) => c.length === 0)) {
    throw new Error("no convergence rows to plot");
  }
  const allT = curves.flatMap((c) => c.map((r) => r.T));
  const allG = curves.flatMap((c) => c.map((r) => r.rel_gap));
  const frame = { x0: 64, y0: 28, w: width - 92, h: height - 80 };
  const xs = log10Scale(Math.min(...allT) / 1.2, Math.max(...allT) * 1.2,
                        frame.x0, frame.x0 + frame.w);
  const gHi = Math.max(...allG, 1e-6);
  const ys = linearScale(0, gHi * 1.1, frame.y0 + frame.h, frame.y0);
  const parts = axes(frame, xs, ys, true);
  curves.forEach((rows, i) => {
    const color = PALETTE[i % PALETTE.length];
    const px = rows.map((r) => xs(r.T));
    const py = rows.map((r) => ys(r.rel_gap));
    parts.push(polyline(px, py, color, 1.5, i === 0 ? "" : "6,4"));
    rows.forEach((r, j) => parts.push(circle(px[j], py[j], 2.6, color)));
    parts.push(text(frame.x0 + frame.w - 6, frame.y0 + 16 + 14 * i,
                    rows[0].regime, 11, "end"));
    parts.push(line(frame.x0 + frame.w - 64, frame.y0 + 12 + 14 * i,
                    frame.x0 + frame.w - 46, frame.y0 + 12 + 14 * i, color,
                    2));
  });
  parts.push(text(frame.x0 + frame.w / 2, height - 18,
                  "horizon T (log scale)", 12, "middle"));
  parts.push(text(frame.x0 + frame.w / 2, 16,
                  "relative gap |I(T)/I_limit - 1|", 12, "middle"));
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
  const csvPath = args.get("csv");
  const outPath = args.get("out");
  if (!csvPath || !outPath) {
    console.error(
      "usage: render_convergence --csv exponent.csv --out fig.svg "
      + "[--overlay other.csv]");
    return 2;
  }
  try {
    const curves = [parseExponentCsv(fs.readFileSync(csvPath, "utf-8"))];
    const overlay = args.get("overlay");
    if (overlay) {
      curves.push(parseExponentCsv(fs.readFileSync(overlay, "utf-8")));
    }
    fs.writeFileSync(outPath, renderConvergenceSvg(curves));
  } catch (err) {
    console.error(String(err));
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
