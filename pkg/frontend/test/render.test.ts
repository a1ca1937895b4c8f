import { createHash } from "crypto";
import { execFileSync } from "child_process";
import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { describe, expect, it } from "vitest";

import { parseEnsembleCsv, parseExponentCsv } from "../src/csv";
import { renderConvergenceSvg } from "../src/render_convergence";
import { FigureSpec, renderPathsSvg, validateSpec } from "../src/render_paths";

const FIXTURES = path.join(__dirname, "fixtures");
const DIST = path.join(__dirname, "..", "dist");

function sha256(data: string | Buffer): string {
  return createHash("sha256").update(data).digest("hex");
}

function loadSpec(): FigureSpec {
  return JSON.parse(
    fs.readFileSync(path.join(FIXTURES, "figures_spec.json"), "utf-8"));
}

describe("csv parsing", () => {
  it("reads an ensemble file with provenance comment", () => {
    const ens = parseEnsembleCsv(fs.readFileSync(
      path.join(FIXTURES, "paths_a1p8_g0p5.csv"), "utf-8"));
    expect(ens.times[0]).toBe(0);
    expect(ens.paths.length).toBe(6);
    expect(ens.paths[0][0]).toBe(0);
    expect(ens.kind).toBe("limit_dependent_stable");
  });

  it("rejects malformed ensembles", () => {
    expect(() => parseEnsembleCsv("nope,1,2\n")).toThrow(/header/);
    expect(() => parseEnsembleCsv("time,0.0,1.0\n")).toThrow(/no path rows/);
    expect(() => parseEnsembleCsv("time,0.0,1.0\n0,0.0\n")).toThrow(/values/);
  });

  it("reads exponent rows", () => {
    const rows = parseExponentCsv(fs.readFileSync(
      path.join(FIXTURES, "convergence.csv"), "utf-8"));
    expect(rows.length).toBe(3);
    expect(rows[0].regime).toBe("trawl_levy");
    expect(rows[0].rel_gap).toBeGreaterThan(rows[2].rel_gap);
  });

  it("rejects an empty exponent csv", () => {
    expect(() => parseExponentCsv("T,F_T,I_T,I_limit,rel_gap,regime,"
      + "tol_achieved\n")).toThrow(/no data rows/);
  });
});

describe("sample-path grid", () => {
  it("renders a 2x2 grid deterministically", () => {
    const spec = loadSpec();
    expect(spec.panels.length).toBe(4);
    const a = renderPathsSvg(spec, FIXTURES);
    const b = renderPathsSvg(spec, FIXTURES);
    expect(a).toBe(b);
    expect(a.startsWith("<svg")).toBe(true);
    // one panel title per (alpha, gamma) pair
    for (const p of spec.panels) {
      expect(a).toContain(`alpha = ${p.alpha}, gamma = ${p.gamma}`);
    }
    const polylines = a.match(/<polyline/g) ?? [];
    expect(polylines.length).toBeGreaterThanOrEqual(4 * 6);
  });

  it("rejects empty panel lists and bad regimes", () => {
    expect(() => validateSpec({ panels: [] }, FIXTURES)).toThrow(/empty/);
    expect(() => validateSpec({
      panels: [{ file: "paths_a1p8_g0p5.csv", alpha: 1.2, gamma: 0.5,
                 n_paths: 2 }],
    }, FIXTURES)).toThrow(/alpha/);
    expect(() => validateSpec({
      panels: [{ file: "missing.csv", alpha: 1.8, gamma: 0.5, n_paths: 2 }],
    }, FIXTURES)).toThrow(/not found/);
  });
});

describe("convergence plot", () => {
  it("renders one curve and an overlay deterministically", () => {
    const main = parseExponentCsv(fs.readFileSync(
      path.join(FIXTURES, "convergence.csv"), "utf-8"));
    const crit = parseExponentCsv(fs.readFileSync(
      path.join(FIXTURES, "critical_exponent.csv"), "utf-8"));
    const a = renderConvergenceSvg([main, crit]);
    const b = renderConvergenceSvg([main, crit]);
    expect(a).toBe(b);
    expect(a).toContain("trawl_levy");
    expect(a).toContain("critical_log");
    // the critical curve decays more slowly per decade of T
    const decay = (rows: typeof main) =>
      rows[rows.length - 1].rel_gap / rows[rows.length - 2].rel_gap;
    expect(decay(crit)).toBeGreaterThan(decay(main));
  });
});

describe("command-line scripts (built dist)", () => {
  const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "figs-"));

  function runNode(script: string, args: string[]):
      { status: number; out: string } {
    try {
      const out = execFileSync(
        "node", [path.join(DIST, script), ...args],
        { encoding: "utf-8", stdio: ["ignore", "pipe", "pipe"] });
      return { status: 0, out };
    } catch (err: any) {
      return { status: err.status ?? 1, out: String(err.stderr ?? "") };
    }
  }

  it("render_paths produces a stable image checksum", () => {
    const out1 = path.join(tmp, "fig1.svg");
    const out2 = path.join(tmp, "fig2.svg");
    const spec = path.join(FIXTURES, "figures_spec.json");
    expect(runNode("render_paths.js",
                   ["--spec", spec, "--out", out1]).status).toBe(0);
    expect(runNode("render_paths.js",
                   ["--spec", spec, "--out", out2]).status).toBe(0);
    expect(sha256(fs.readFileSync(out1)))
      .toBe(sha256(fs.readFileSync(out2)));
  });

  it("render_convergence produces a stable image checksum", () => {
    const out1 = path.join(tmp, "c1.svg");
    const out2 = path.join(tmp, "c2.svg");
    const csv = path.join(FIXTURES, "convergence.csv");
    const overlay = path.join(FIXTURES, "critical_exponent.csv");
    expect(runNode("render_convergence.js",
                   ["--csv", csv, "--overlay", overlay,
                    "--out", out1]).status).toBe(0);
    expect(runNode("render_convergence.js",
                   ["--csv", csv, "--overlay", overlay,
                    "--out", out2]).status).toBe(0);
    expect(sha256(fs.readFileSync(out1)))
      .toBe(sha256(fs.readFileSync(out2)));
  });

  it("exits nonzero on missing or empty inputs", () => {
    expect(runNode("render_paths.js",
                   ["--spec", path.join(tmp, "nope.json"),
                    "--out", path.join(tmp, "x.svg")]).status).not.toBe(0);
    const emptySpec = path.join(tmp, "empty.json");
    fs.writeFileSync(emptySpec, JSON.stringify({ panels: [] }));
    expect(runNode("render_paths.js",
                   ["--spec", emptySpec,
                    "--out", path.join(tmp, "x.svg")]).status).not.toBe(0);
    const emptyCsv = path.join(tmp, "empty.csv");
    fs.writeFileSync(emptyCsv,
                     "T,F_T,I_T,I_limit,rel_gap,regime,tol_achieved\n");
    expect(runNode("render_convergence.js",
                   ["--csv", emptyCsv,
                    "--out", path.join(tmp, "x.svg")]).status).not.toBe(0);
  });
});
