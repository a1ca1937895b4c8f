"""Experiment configuration: a single JSON document, strictly validated.

Unknown keys are rejected with the offending path; the canonical form
(sorted keys, compact separators, shortest-round-trip floats) feeds the
config hash that stamps every artifact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from ._errors import ValidationError
from ._util import canonical_json, stable_hash
from .levy import PoissonDifference, SymmetricStable, density_from_table
from .pathsim import SeriesBudget
from .trawl import TimeCombo, TrawlSpec


class ConfigError(ValidationError):
    """Invalid experiment configuration, with a path-precise message."""


def _expect(cond, path, message):
    if not cond:
        raise ConfigError(f"{path}: {message}")


def _check_keys(obj, path, allowed):
    _expect(isinstance(obj, dict), path, "must be an object")
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}: unknown key")


def _real(obj, path, lo=None, hi=None, lo_open=False, hi_open=False):
    _expect(isinstance(obj, (int, float)) and not isinstance(obj, bool),
            path, "must be a number")
    x = float(obj)
    _expect(math.isfinite(x), path, "must be finite")
    if lo is not None:
        _expect(x > lo if lo_open else x >= lo, path,
                f"must be {'>' if lo_open else '>='} {lo}")
    if hi is not None:
        _expect(x < hi if hi_open else x <= hi, path,
                f"must be {'<' if hi_open else '<='} {hi}")
    return x


def _integer(obj, path, lo=None):
    _expect(isinstance(obj, int) and not isinstance(obj, bool), path,
            "must be an integer")
    if lo is not None:
        _expect(obj >= lo, path, f"must be >= {lo}")
    return int(obj)


def _parse_levy(obj):
    _check_keys(obj, "levy", {"kind", "alpha", "lambda", "jump", "table",
                              "alpha_at_zero", "alpha_at_infinity",
                              "moment_kappa"})
    kind = obj.get("kind")
    if kind == "stable":
        alpha = _real(obj.get("alpha"), "levy.alpha", 0.0, 2.0, True, True)
        return SymmetricStable(alpha)
    if kind == "poisson_difference":
        lam = _real(obj.get("lambda", 1.0), "levy.lambda", 0.0)
        jump = _real(obj.get("jump", 1.0), "levy.jump", 0.0, lo_open=True)
        return PoissonDifference(lam, jump)
    if kind == "density":
        table = obj.get("table")
        _expect(isinstance(table, list) and len(table) >= 2, "levy.table",
                "must be a list of [y, h(y)] pairs")
        meta = {}
        for key in ("alpha_at_zero", "alpha_at_infinity", "moment_kappa"):
            if obj.get(key) is not None:
                meta[key] = _real(obj[key], f"levy.{key}", 0.0, lo_open=True)
        try:
            return density_from_table(table, **meta)
        except ValidationError as exc:
            raise ConfigError(f"levy.table: {exc}") from exc
    raise ConfigError(
        "levy.kind: must be one of stable, poisson_difference, density")


def _parse_trawl(obj):
    _check_keys(obj, "trawl", {"family", "C", "gamma"})
    _expect(obj.get("family", "canonical") == "canonical", "trawl.family",
            "only the canonical family is expressible in config files")
    gamma = _real(obj.get("gamma"), "trawl.gamma", 0.0, 1.0, True, True)
    C = _real(obj.get("C", 1.0), "trawl.C", 0.0, lo_open=True)
    return TrawlSpec.canonical(C=C, gamma=gamma)


def _parse_combo(obj):
    if obj is None:
        return TimeCombo.single(1.0, 1.0)
    _check_keys(obj, "combo", {"coefficients", "times"})
    coeff = obj.get("coefficients")
    times = obj.get("times")
    _expect(isinstance(coeff, list) and isinstance(times, list)
            and len(coeff) == len(times) and len(coeff) >= 1, "combo",
            "needs equal-length nonempty coefficient/time lists")
    try:
        return TimeCombo(tuple(float(a) for a in coeff),
                         tuple(float(t) for t in times))
    except ValidationError as exc:
        raise ConfigError(f"combo: {exc}") from exc


_TOP_KEYS = {"levy", "trawl", "combo", "T_grid", "times", "T", "n_paths",
             "master_seed", "budget", "window", "method", "output",
             "tolerances"}


@dataclass
class ExperimentConfig:
    levy: object
    trawl: TrawlSpec
    combo: TimeCombo
    T_grid: tuple
    times: tuple
    T: float
    n_paths: int
    master_seed: int
    budget: SeriesBudget
    window: float
    method: str
    out_dir: str
    out_format: str
    quadrature_tol: float
    limit_rel_tol: float
    raw: dict = field(repr=False)

    @property
    def config_hash(self):
        return stable_hash(self.raw)

    def canonical(self):
        return canonical_json(self.raw)


def parse_config(doc):
    """Validate a config document (dict) into an :class:`ExperimentConfig`."""
    _check_keys(doc, "config", _TOP_KEYS)
    _expect("levy" in doc, "config", "missing required key 'levy'")
    _expect("trawl" in doc, "config", "missing required key 'trawl'")
    levy = _parse_levy(doc["levy"])
    trawl = _parse_trawl(doc["trawl"])
    combo = _parse_combo(doc.get("combo"))

    T_grid = doc.get("T_grid", [1e2, 1e3, 1e4])
    _expect(isinstance(T_grid, list) and len(T_grid) >= 1, "T_grid",
            "must be a nonempty list")
    T_grid = tuple(_real(t, f"T_grid[{i}]", 1.0) for i, t in enumerate(T_grid))
    _expect(all(b > a for a, b in zip(T_grid, T_grid[1:])), "T_grid",
            "must be strictly increasing")

    times = doc.get("times", [0.0, 0.5, 1.0])
    _expect(isinstance(times, list) and len(times) >= 1, "times",
            "must be a nonempty list")
    times = tuple(_real(t, f"times[{i}]", 0.0) for i, t in enumerate(times))
    _expect(all(b > a for a, b in zip(times, times[1:])), "times",
            "must be strictly increasing")

    T = _real(doc.get("T", T_grid[-1]), "T", 1.0)
    n_paths = _integer(doc.get("n_paths", 1000), "n_paths", 1)
    master_seed = _integer(doc.get("master_seed", 0), "master_seed", 0)

    budget_doc = doc.get("budget", {})
    _check_keys(budget_doc, "budget", {"n_terms", "u_cutoff", "cf_error_tol"})
    n_terms = _integer(budget_doc.get("n_terms", 2000), "budget.n_terms", 1)
    u_cut = budget_doc.get("u_cutoff")
    if u_cut is not None:
        u_cut = _real(u_cut, "budget.u_cutoff", 0.0, lo_open=True)
    cf_tol = budget_doc.get("cf_error_tol")
    if cf_tol is not None:
        cf_tol = _real(cf_tol, "budget.cf_error_tol", 0.0, lo_open=True)
    budget = SeriesBudget(n_terms, u_cut, cf_tol)

    window = _real(doc.get("window", 0.0), "window", 0.0)
    method = doc.get("method", "auto")
    _expect(method in ("auto", "kernel", "grid", "series"), "method",
            "must be auto, kernel, grid or series")

    out = doc.get("output", {})
    _check_keys(out, "output", {"dir", "format"})
    out_dir = out.get("dir", "out")
    _expect(isinstance(out_dir, str) and out_dir, "output.dir",
            "must be a nonempty string")
    out_format = out.get("format", "csv")
    _expect(out_format in ("csv", "bin"), "output.format",
            "must be csv or bin")

    tols = doc.get("tolerances", {})
    _check_keys(tols, "tolerances", {"quadrature", "limit_rel"})
    qtol = _real(tols.get("quadrature", 1e-7), "tolerances.quadrature", 0.0,
                 lo_open=True)
    ltol = _real(tols.get("limit_rel", 1e-6), "tolerances.limit_rel", 0.0,
                 lo_open=True)

    return ExperimentConfig(
        levy=levy, trawl=trawl, combo=combo, T_grid=T_grid, times=times,
        T=T, n_paths=n_paths, master_seed=master_seed, budget=budget,
        window=window, method=method, out_dir=out_dir, out_format=out_format,
        quadrature_tol=qtol, limit_rel_tol=ltol, raw=doc)


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from exc
    return parse_config(doc)
