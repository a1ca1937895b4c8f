"""Configuration-driven experiment runner.

Subcommands: ``classify``, ``verify-exponent``, ``simulate``,
``limit-process``, ``estimate``, ``figures-data``.  Exit codes: 0 success,
2 configuration or I/O error, 3 unclassified regime, 4 accuracy budget
exceeded.  All artifacts are stamped with the config hash and listed with
checksums in a per-run ``manifest.json``; ensembles and exponent CSVs are
bit-identical across reruns and thread counts for a fixed (config, seed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from ._errors import (AccuracyError, FormatError, TrawlSimError,
                      ValidationError)
from .config import ConfigError, load_config
from .exponents import convergence_diagnostic, limit_exponent
from .io import (atomic_write_bytes, read_ensemble, sha256_file,
                 write_ensemble_binary, write_ensemble_csv,
                 write_exponent_csv)
from .levy import LevyExponent, Regime, SymmetricStable, classify_regime
from .pathsim import (simulate_finite_activity_yt, simulate_limit_y,
                      simulate_stable_levy, simulate_stable_yt,
                      simulate_x_grid)
from .stats import selfsim_index_fit, stability_index_fit
from ._util import path_rng

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNCLASSIFIED = 3
EXIT_ACCURACY = 4

#: default panel parameters for the sample-path figure data (all in the
#: dependent-increment regime alpha > 1 + gamma)
FIGURE_PANELS = ((1.8, 0.5), (1.8, 0.2), (1.4, 0.3), (1.9, 0.8))


class _Manifest:
    def __init__(self, config):
        self.doc = {
            "tool": "trawlsim",
            "version": __version__,
            "config_hash": config.config_hash,
            "master_seed": config.master_seed,
            "stages": [],
            "files": {},
        }

    def stage(self, name, seconds):
        self.doc["stages"].append(
            {"name": name, "wall_seconds": round(seconds, 3)})

    def add_file(self, out_dir, name):
        self.doc["files"][name] = sha256_file(os.path.join(out_dir, name))

    def write(self, out_dir):
        blob = json.dumps(self.doc, indent=2, sort_keys=True) + "\n"
        atomic_write_bytes(os.path.join(out_dir, "manifest.json"),
                           blob.encode("utf-8"))


def _prepare_out_dir(path, force):
    if os.path.exists(path):
        if not os.path.isdir(path):
            raise ValidationError(f"output path {path} is not a directory")
        if os.listdir(path) and not force:
            raise ValidationError(
                f"output directory {path} is not empty; pass --force to "
                f"overwrite")
    else:
        os.makedirs(path, exist_ok=True)


def _threads(args):
    if args.threads is not None:
        return args.threads
    env = os.environ.get("TRAWLSIM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValidationError(
                f"TRAWLSIM_THREADS must be an integer, got {env!r}")
    return 1


def _apply_overrides(cfg, args):
    if args.seed is not None:
        cfg.master_seed = args.seed
        cfg.raw["master_seed"] = args.seed
    if args.out is not None:
        cfg.out_dir = args.out
    if getattr(args, "format", None):
        cfg.out_format = args.format
    return cfg


def _write_ensemble(ensemble, out_dir, name, fmt):
    fname = f"{name}.{'bin' if fmt == 'bin' else 'csv'}"
    path = os.path.join(out_dir, fname)
    if fmt == "bin":
        write_ensemble_binary(ensemble, path)
    else:
        write_ensemble_csv(ensemble, path)
    return fname


def _norming_value(report, T):
    return float(report.norming(T))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_classify(args):
    cfg = _apply_overrides(load_config(args.config), args)
    report = classify_regime(cfg.levy, cfg.trawl.gamma)
    doc = report.to_json_dict()
    doc["config_hash"] = cfg.config_hash
    blob = json.dumps(doc, indent=2, sort_keys=True, default=float) + "\n"
    if args.out:
        _prepare_out_dir(args.out, args.force)
        atomic_write_bytes(os.path.join(args.out, "regime.json"),
                           blob.encode("utf-8"))
    sys.stdout.write(blob)
    return EXIT_OK if report.classified else EXIT_UNCLASSIFIED


def cmd_verify_exponent(args):
    cfg = _apply_overrides(load_config(args.config), args)
    report = classify_regime(cfg.levy, cfg.trawl.gamma)
    if not report.classified:
        sys.stderr.write("regime: unclassified; cannot verify exponent\n")
        return EXIT_UNCLASSIFIED
    _prepare_out_dir(cfg.out_dir, args.force)
    manifest = _Manifest(cfg)
    t0 = time.perf_counter()
    diag = convergence_diagnostic(report, cfg.combo, cfg.trawl,
                                  LevyExponent(cfg.levy), cfg.T_grid,
                                  tol=cfg.quadrature_tol)
    manifest.stage("convergence_diagnostic", time.perf_counter() - t0)
    write_exponent_csv(diag, os.path.join(cfg.out_dir, "exponent.csv"))
    manifest.add_file(cfg.out_dir, "exponent.csv")
    if diag.audit:
        blob = json.dumps(diag.audit, indent=2, sort_keys=True,
                          default=float) + "\n"
        atomic_write_bytes(os.path.join(cfg.out_dir, "limit_audit.json"),
                           blob.encode("utf-8"))
        manifest.add_file(cfg.out_dir, "limit_audit.json")
    manifest.write(cfg.out_dir)
    sys.stdout.write(f"wrote {cfg.out_dir}/exponent.csv "
                     f"({len(diag.T_grid)} rows)\n")
    return EXIT_OK


def _pick_method(cfg):
    if cfg.method != "auto":
        return cfg.method
    if isinstance(cfg.levy, SymmetricStable):
        return "series"
    return "kernel"


def cmd_simulate(args):
    cfg = _apply_overrides(load_config(args.config), args)
    report = classify_regime(cfg.levy, cfg.trawl.gamma)
    if not report.classified:
        sys.stderr.write("regime: unclassified; cannot pick a norming\n")
        return EXIT_UNCLASSIFIED
    method = _pick_method(cfg)
    F_T = _norming_value(report, cfg.T)
    _prepare_out_dir(cfg.out_dir, args.force)
    manifest = _Manifest(cfg)
    threads = _threads(args)
    t0 = time.perf_counter()
    if method == "kernel":
        ens = simulate_finite_activity_yt(
            cfg.times, cfg.T, cfg.trawl, cfg.levy, F_T, cfg.n_paths,
            cfg.master_seed, n_threads=threads)
        outputs = [("ensemble", ens)]
    elif method == "series":
        if not isinstance(cfg.levy, SymmetricStable):
            raise ValidationError("method 'series' needs a stable base")
        ens = simulate_stable_yt(
            cfg.times, cfg.T, cfg.trawl, cfg.levy.alpha, F_T, cfg.budget,
            cfg.n_paths, cfg.master_seed, n_threads=threads)
        outputs = [("ensemble", ens)]
    elif method == "grid":
        x_ens, y_ens = simulate_x_grid(
            cfg.trawl, cfg.levy, cfg.times, cfg.T, F_T, cfg.window,
            cfg.n_paths, cfg.master_seed, n_threads=threads)
        outputs = [("ensemble", y_ens), ("x_paths", x_ens)]
    else:
        raise ValidationError(f"unknown method {method!r}")
    manifest.stage(f"simulate[{method}]", time.perf_counter() - t0)
    for name, ens in outputs:
        fname = _write_ensemble(ens, cfg.out_dir, name, cfg.out_format)
        manifest.add_file(cfg.out_dir, fname)
    manifest.write(cfg.out_dir)
    sys.stdout.write(f"wrote {len(outputs)} ensemble(s) to {cfg.out_dir} "
                     f"[method={method}, F_T={F_T!r}]\n")
    return EXIT_OK


def cmd_limit_process(args):
    cfg = _apply_overrides(load_config(args.config), args)
    report = classify_regime(cfg.levy, cfg.trawl.gamma)
    if not report.classified:
        sys.stderr.write("regime: unclassified; no limit process\n")
        return EXIT_UNCLASSIFIED
    _prepare_out_dir(cfg.out_dir, args.force)
    manifest = _Manifest(cfg)
    threads = _threads(args)
    t0 = time.perf_counter()
    lim = limit_exponent(report, cfg.combo, cfg.trawl,
                         LevyExponent(cfg.levy), tol=cfg.limit_rel_tol)
    times = [t for t in cfg.times if t > 0] or [1.0]
    if report.regime is Regime.DEPENDENT_STABLE:
        alpha = report.limit_index
        K = (report.constants.get("C_psi", 1.0) * cfg.trawl.C_g) \
            ** (1.0 / alpha)
        ens = simulate_limit_y(cfg.times, alpha, cfg.trawl.gamma, cfg.budget,
                               cfg.n_paths, cfg.master_seed,
                               n_threads=threads)
        ens.paths *= K
    else:
        # independent-increment limits: a stable process scaled so its
        # exponent matches the limit of I(T) for the unit combo
        beta = report.limit_index
        from .trawl import TimeCombo
        unit = limit_exponent(report, TimeCombo.single(1.0, 1.0), cfg.trawl,
                              LevyExponent(cfg.levy), tol=cfg.limit_rel_tol)
        ens = simulate_stable_levy(cfg.times, beta, unit.K, cfg.n_paths,
                                   cfg.master_seed, n_threads=threads)
    manifest.stage("limit_process", time.perf_counter() - t0)
    fname = _write_ensemble(ens, cfg.out_dir, "limit_ensemble",
                            cfg.out_format)
    manifest.add_file(cfg.out_dir, fname)
    doc = {"regime": report.regime.value, "limit_index": report.limit_index,
           "limit_exponent": lim.value, "K": lim.K,
           "audit": lim.audit}
    atomic_write_bytes(os.path.join(cfg.out_dir, "limit.json"),
                       (json.dumps(doc, indent=2, sort_keys=True,
                                   default=float) + "\n").encode())
    manifest.add_file(cfg.out_dir, "limit.json")
    manifest.write(cfg.out_dir)
    sys.stdout.write(f"wrote {fname} [regime={report.regime.value}]\n")
    return EXIT_OK


def cmd_estimate(args):
    cfg = _apply_overrides(load_config(args.config), args)
    if not os.path.exists(args.ensemble):
        raise ValidationError(f"ensemble file not found: {args.ensemble}")
    ens = read_ensemble(args.ensemble)
    method = args.estimator
    if method == "stability_index":
        samples = []
        for a, b in zip(ens.times[:-1], ens.times[1:]):
            samples.append(ens.increments(a, b))
        pooled = np.concatenate(samples)
        fit = stability_index_fit(pooled)
        boot_rng = path_rng(cfg.master_seed, 0xE57)
        boots = []
        for _ in range(200):
            idx = boot_rng.integers(0, pooled.size, size=pooled.size)
            try:
                boots.append(stability_index_fit(pooled[idx]).index_hat)
            except TrawlSimError:
                continue
        lo, hi = np.percentile(boots, [2.5, 97.5]) if boots else (fit.index_hat,) * 2
    elif method == "selfsim":
        base = next(t for t in ens.times if t > 0)
        scales = [base, 2 * base, 4 * base]
        samples = [ens.values_at(t) for t in scales]
        fit = selfsim_index_fit(samples, scales)
        boot_rng = path_rng(cfg.master_seed, 0xE57)
        boots = []
        n = samples[0].size
        for _ in range(50):
            idx = boot_rng.integers(0, n, size=n)
            try:
                boots.append(selfsim_index_fit(
                    [s[idx] for s in samples], scales).index_hat)
            except TrawlSimError:
                continue
        lo, hi = np.percentile(boots, [2.5, 97.5]) if boots else (fit.index_hat,) * 2
    else:
        raise ValidationError(f"unknown estimator {method!r}")
    doc = {
        "index_hat": fit.index_hat,
        "ci_low": float(lo),
        "ci_high": float(hi),
        "r_squared": fit.r_squared,
        "window": list(fit.theta_window),
        "method": method,
    }
    blob = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        _prepare_out_dir(args.out, args.force)
        atomic_write_bytes(os.path.join(args.out, "estimate.json"),
                           blob.encode("utf-8"))
    sys.stdout.write(blob)
    return EXIT_OK


def cmd_figures_data(args):
    cfg = _apply_overrides(load_config(args.config), args)
    _prepare_out_dir(cfg.out_dir, args.force)
    manifest = _Manifest(cfg)
    threads = _threads(args)
    panel_times = np.linspace(0.0, 1.0, 201)
    panels = []
    for j, (alpha, gamma) in enumerate(FIGURE_PANELS):
        t0 = time.perf_counter()
        ens = simulate_limit_y(panel_times, alpha, gamma, cfg.budget,
                               max(cfg.n_paths, 4), cfg.master_seed + j,
                               n_threads=threads)
        name = f"paths_a{alpha:g}_g{gamma:g}".replace(".", "p")
        fname = _write_ensemble(ens, cfg.out_dir, name, "csv")
        manifest.stage(f"panel[{alpha:g},{gamma:g}]",
                       time.perf_counter() - t0)
        manifest.add_file(cfg.out_dir, fname)
        panels.append({"file": fname, "alpha": alpha, "gamma": gamma,
                       "n_paths": int(min(ens.n_paths, 6))})
    report = classify_regime(cfg.levy, cfg.trawl.gamma)
    conv_file = None
    if report.classified:
        t0 = time.perf_counter()
        diag = convergence_diagnostic(report, cfg.combo, cfg.trawl,
                                      LevyExponent(cfg.levy), cfg.T_grid,
                                      tol=cfg.quadrature_tol)
        conv_file = "convergence.csv"
        write_exponent_csv(diag, os.path.join(cfg.out_dir, conv_file))
        manifest.stage("convergence", time.perf_counter() - t0)
        manifest.add_file(cfg.out_dir, conv_file)
    spec = {"panels": panels, "convergence": conv_file, "dpi": 144}
    atomic_write_bytes(os.path.join(cfg.out_dir, "figures_spec.json"),
                       (json.dumps(spec, indent=2, sort_keys=True) + "\n")
                       .encode("utf-8"))
    manifest.add_file(cfg.out_dir, "figures_spec.json")
    manifest.write(cfg.out_dir)
    sys.stdout.write(f"wrote figure data to {cfg.out_dir}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="experiment JSON")
    common.add_argument("--seed", type=int, default=None,
                        help="override master_seed")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (or TRAWLSIM_THREADS)")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--format", choices=("csv", "bin"), default=None,
                        help="ensemble file format")
    common.add_argument("--force", action="store_true",
                        help="overwrite an existing output directory")

    p = argparse.ArgumentParser(
        prog="trawlsim",
        description="simulate integrated trawl processes and verify their "
                    "long-horizon limit laws")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common],
                   help="decide which limit law applies")
    sub.add_parser("verify-exponent", parents=[common],
                   help="quadrature convergence diagnostic I(T) -> I(inf)")
    sub.add_parser("simulate", parents=[common],
                   help="sample the integrated process")
    sub.add_parser("limit-process", parents=[common],
                   help="sample the limit process")
    est = sub.add_parser("estimate", parents=[common],
                         help="fit indices from an ensemble file")
    est.add_argument("--ensemble", required=True, help="ensemble csv/bin")
    est.add_argument("--estimator", default="stability_index",
                     choices=("stability_index", "selfsim"))
    sub.add_parser("figures-data", parents=[common],
                   help="emit sample-path and convergence data for plotting")
    return p


_COMMANDS = {
    "classify": cmd_classify,
    "verify-exponent": cmd_verify_exponent,
    "simulate": cmd_simulate,
    "limit-process": cmd_limit_process,
    "estimate": cmd_estimate,
    "figures-data": cmd_figures_data,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except AccuracyError as exc:
        sys.stderr.write(f"accuracy: {exc}\n")
        return EXIT_ACCURACY
    except (ConfigError, ValidationError, FormatError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return EXIT_CONFIG
    except TrawlSimError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
