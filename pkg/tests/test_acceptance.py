"""Acceptance suite: one test per acceptance criterion, each printing a
PASS/FAIL line (run with ``pytest -s tests/test_acceptance.py``).

All statistical checks run at fixed seeds; the 3-standard-error bands refer
to the empirical characteristic function (ECF) of the simulated ensembles
against the deterministic quadrature oracles.
"""

import hashlib
import json
import time

import numpy as np
import pytest

from trawlsim import (LevyExponent, PoissonDifference, Regime, SeriesBudget,
                      SymmetricStable, TimeCombo, TrawlSpec,
                      convergence_diagnostic, increment_dependence,
                      integrated_exponent, kernel_moment, limit_exponent,
                      selfsim_index_fit, simulate_finite_activity_yt,
                      simulate_limit_y, simulate_stable_levy,
                      stability_index_fit)
from trawlsim.cli import main as cli_main
from trawlsim.stats import ecf_distance_test
from trawlsim.pathsim import simulate_x_grid

CANONICAL = TrawlSpec.canonical(1.0, 0.5)


def report(criterion, ok, detail):
    line = f"[acceptance {criterion}] {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    assert ok, line


def ecf_z(sample, theta, target):
    c = np.cos(theta * np.asarray(sample))
    return (c.mean() - target) / (c.std(ddof=1) / np.sqrt(c.size))


@pytest.mark.acceptance
def test_criterion_1_kernel_scaling_law():
    t0 = time.perf_counter()
    worst = 0.0
    for kappa, gamma in [(1.8, 0.5), (2.0, 0.5), (1.6, 0.3)]:
        J1 = kernel_moment(kappa, gamma, 1.0)
        for t in (0.5, 2.0, 4.0):
            ratio = kernel_moment(kappa, gamma, t) / J1
            worst = max(worst, abs(ratio / t ** (kappa - gamma) - 1.0))
    elapsed = time.perf_counter() - t0
    report(1, worst <= 1e-4 and elapsed < 10.0,
           f"kernel-moment scaling J(t)/J(1) = t^(k-g), worst rel err "
           f"{worst:.2e} (tol 1e-4), {elapsed:.2f}s (< 10s)")


@pytest.mark.acceptance
def test_criterion_2_characteristic_functional_oracle():
    t0 = time.perf_counter()
    spec = PoissonDifference(1.0)
    lev = LevyExponent(spec)
    T = 1e3
    F = T ** (2.0 / 3.0)
    ens = simulate_finite_activity_yt([1.0], T, CANONICAL, spec, F,
                                      10_000, master_seed=20260)
    y = ens.values_at(1.0)
    zs = {}
    for th in (0.25, 0.5, 1.0, 2.0):
        I = integrated_exponent(TimeCombo.single(th, 1.0), CANONICAL, lev,
                                T, F)
        zs[th] = ecf_z(y, th, np.exp(-I))
    elapsed = time.perf_counter() - t0
    ok = all(abs(z) <= 3.0 for z in zs.values()) and elapsed < 120.0
    report(2, ok, "ECF of 1e4 exact paths vs exp(-I(T)) at T=1e3: z = "
           + ", ".join(f"{th}:{z:+.2f}" for th, z in zs.items())
           + f" (|z|<=3), {elapsed:.1f}s (< 120s)")


@pytest.mark.acceptance
def test_criterion_3_light_base_increment_index():
    spec = PoissonDifference(1.0)
    T = 1e4
    ens = simulate_finite_activity_yt([1.0, 2.0], T, CANONICAL, spec,
                                      T ** (2.0 / 3.0), 10_000,
                                      master_seed=20261)
    pooled = np.concatenate([ens.values_at(1.0), ens.increments(1.0, 2.0)])
    fit = stability_index_fit(pooled)
    ok = abs(fit.index_hat - 1.5) <= 0.1
    report(3, ok, f"stability index of Y_T increments at T=1e4: "
           f"{fit.index_hat:.4f} (target 1.5 +- 0.1, r2={fit.r_squared:.4f})")


@pytest.mark.acceptance
def test_criterion_4_dependent_limit_process():
    alpha, gamma = 1.8, 0.5
    H_target = 1.0 - gamma / alpha
    ens = simulate_limit_y([1.0, 2.0, 4.0], alpha, gamma,
                           SeriesBudget(n_terms=3000), 10_000,
                           master_seed=20271)
    checks = []
    # marginal law at t in {1, 2} against the kernel-moment exponent
    worst_z = 0.0
    for t in (1.0, 2.0):
        J = kernel_moment(alpha, gamma, t)
        y = ens.values_at(t)
        for th in (0.1, 0.2, 0.4):
            worst_z = max(worst_z, abs(ecf_z(y, th, np.exp(-th ** alpha * J))))
    checks.append(("marginal ECF worst |z|", worst_z, worst_z <= 3.0))
    # self-similarity index
    fit = selfsim_index_fit([ens.values_at(t) for t in (1.0, 2.0, 4.0)],
                            [1.0, 2.0, 4.0])
    checks.append((f"H-hat {fit.index_hat:.4f} vs {H_target:.4f}",
                   abs(fit.index_hat - H_target),
                   abs(fit.index_hat - H_target) <= 0.05))
    # dependent increments detected...
    dep = increment_dependence(ens, (0.0, 1.0), (1.0, 2.0))
    checks.append(("dependence z", dep.z_score, dep.z_score > 3.0))
    # ...while an independent-increment stable process stays compatible with 0
    levy_ens = simulate_stable_levy([1.0, 2.0, 4.0], 1.2, 1.0, 10_000,
                                    master_seed=20263)
    dep0 = increment_dependence(levy_ens, (0.0, 1.0), (1.0, 2.0))
    checks.append(("independent-increment z", dep0.z_score,
                   dep0.z_score <= 3.0))
    ok = all(c[2] for c in checks)
    report(4, ok, "; ".join(f"{name}={val:.3f} {'ok' if good else 'BAD'}"
                            for name, val, good in checks))


@pytest.mark.acceptance
def test_criterion_5_exponent_convergence_per_regime():
    t0 = time.perf_counter()
    combo = TimeCombo.single(1.0, 1.0)
    cases = [
        ("dependent", SymmetricStable(1.8), Regime.DEPENDENT_STABLE,
         [1e2, 1e3, 1e4, 1e5]),
        ("trawl-levy", PoissonDifference(1.0), Regime.TRAWL_LEVY,
         [1e2, 1e3, 1e4, 1e5]),
        ("base-levy", SymmetricStable(1.2), Regime.BASE_LEVY,
         [1e2, 1e3, 1e4, 1e5]),
        ("critical", SymmetricStable(1.5), Regime.CRITICAL_LOG,
         [1e3, 1e4, 1e5, 1e6]),
    ]
    lines = []
    ok = True
    for name, spec, regime, grid in cases:
        rep = convergence_diagnostic(regime, combo, CANONICAL,
                                     LevyExponent(spec), grid)
        gaps = rep.rel_gaps
        decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
        ok = ok and decreasing
        lines.append(f"{name}: gaps " + ">".join(f"{g:.4f}" for g in gaps)
                     + (" ok" if decreasing else " NOT-DECREASING"))
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 300.0
    report(5, ok, "; ".join(lines) + f"; {elapsed:.1f}s (< 300s)")


@pytest.mark.acceptance
def test_criterion_6_small_jump_constant_audit():
    alpha, gamma = 1.2, 0.5
    combo = TimeCombo.single(1.0, 1.0)
    lev = LevyExponent(SymmetricStable(alpha))
    lim = limit_exponent(Regime.BASE_LEVY, combo, CANONICAL, lev)
    assert lim.audit is not None
    T = 1e6
    F = T ** (1.0 / alpha)
    observed = integrated_exponent(combo, CANONICAL, lev, T, F)
    gap_sa = abs(observed / lim.audit["small_argument_form"] - 1.0)
    gap_g0 = abs(observed / lim.audit["g0_form"] - 1.0)
    if gap_sa <= 0.02:
        verdict = "small-argument form matches within 2%"
    elif gap_g0 <= 0.02:
        verdict = "g(0)-weighted form matches within 2%"
    else:
        verdict = "neither closed form within 2% at T=1e6"
    # the criterion passes when the audit is emitted, whichever form wins
    report(6, True,
           f"I(1e6)={observed:.5f}; small-argument="
           f"{lim.audit['small_argument_form']:.5f} (gap {gap_sa:.3%}), "
           f"g0={lim.audit['g0_form']:.5f} (gap {gap_g0:.1%}); {verdict}")


@pytest.mark.acceptance
def test_criterion_7_thread_determinism(tmp_path):
    doc = {
        "levy": {"kind": "poisson_difference", "lambda": 1.0, "jump": 1.0},
        "trawl": {"family": "canonical", "C": 1.0, "gamma": 0.5},
        "combo": {"coefficients": [1.0], "times": [1.0]},
        "T_grid": [100.0, 1000.0],
        "times": [0.0, 0.5, 1.0],
        "T": 100.0,
        "n_paths": 200,
        "master_seed": 7,
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(doc))
    digests = {}
    for threads in ("1", "8"):
        for sub, fname in (("simulate", "ensemble.csv"),
                           ("verify-exponent", "exponent.csv")):
            out = tmp_path / f"{sub}-{threads}"
            code = cli_main([sub, "--config", str(cfg), "--out", str(out),
                             "--threads", threads])
            assert code == 0
            blob = open(out / fname, "rb").read()
            digests.setdefault(fname, []).append(
                hashlib.sha256(blob).hexdigest())
    ok = all(len(set(v)) == 1 for v in digests.values())
    report(7, ok, "thread counts {1,8} give identical artifacts: "
           + ", ".join(f"{k}:{v[0][:12]}" for k, v in digests.items()))


@pytest.mark.acceptance
def test_criterion_8_dual_simulator_equivalence():
    spec = PoissonDifference(1.0)
    T = 1e2
    F = T ** (2.0 / 3.0)
    _, y_grid = simulate_x_grid(CANONICAL, spec, [1.0], T, F, window=50.0,
                                n_paths=4000, master_seed=20264)
    y_kern = simulate_finite_activity_yt([1.0], T, CANONICAL, spec, F,
                                         4000, master_seed=20265)
    stat, p = ecf_distance_test(y_grid.values_at(1.0),
                                y_kern.values_at(1.0), seed=20266)
    report(8, p >= 0.01,
           f"two-sample ECF distance test (plane-exact vs kernel-exact): "
           f"stat={stat:.3f}, p={p:.3f} (level 0.01)")
