"""Experiment harness: trial-signal generation, recovery-vs-dense-baseline
comparison, and CSV emission.

Timing convention: trial polynomials of very high degree are expensive to
*evaluate*, and that cost belongs to the function oracle, not to either
algorithm. Both ``wall_time_recovery`` and ``wall_time_baseline`` therefore
exclude time spent inside the oracle callbacks; the platform-independent
cost of querying the oracle is captured separately by the ``f_evaluations``
counters, which are the primary sublinearity statistic.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .orthopoly import Basis, SparseExpansion
from .recovery import _CountingFunction, recover_sparse_legendre
from .resample import dense_legendre_transform
from .sampling import sample_chebyshev_points, submatrix_condition

__all__ = [
    "TrialSpec",
    "TrialRecord",
    "ExperimentSummary",
    "gen_trial_poly",
    "gen_noisy_trial",
    "box_muller",
    "l2_error_on_support",
    "run_experiment",
]

CSV_SCHEMA = (
    "kind,n,s,log_snr,trial,support_found,l2_error_recovery,l2_error_baseline,"
    "wall_time_recovery,wall_time_baseline,setup_time_recovery,f_evaluations,"
    "f_eval_fraction,baseline_f_evaluations,sft_samples,cg_iterations"
)


@dataclass(frozen=True)
class TrialSpec:
    """One experiment point: signal family and trial count."""

    n_max: int
    s: int
    trials: int = 100
    mode: str = "exact"  # "exact" or "noisy"
    noise_log_snr: Optional[float] = None
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mode not in ("exact", "noisy"):
            raise ValueError("mode must be 'exact' or 'noisy'")
        if (self.mode == "noisy") != (self.noise_log_snr is not None):
            raise ValueError("noise_log_snr must be given exactly for noisy mode")
        if self.s > self.n_max + 1:
            raise ValueError("sparsity exceeds the number of degrees")


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    wall_time_recovery: float
    wall_time_baseline: float
    setup_time_recovery: float
    l2_error_recovery: float
    l2_error_baseline: float
    support_found: bool
    f_evaluations: int
    baseline_f_evaluations: int
    sft_samples: int
    cg_iterations: int


@dataclass(frozen=True)
class ExperimentSummary:
    n_max: int
    s: int
    noise_log_snr: Optional[float]
    trials: int
    support_found_rate: float
    mean_error_recovery_when_found: float
    mean_error_baseline: float
    mean_time_recovery: float
    mean_time_baseline: float
    mean_f_evaluations: float
    f_eval_fraction: float
    probe_kappa: float
    records: tuple


def _trial_rng(seed, trial_index):
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial_index)]))


def box_muller(rng, size):
    """Mean-0, variance-1 Gaussians from uniforms via the polar-free
    Box-Muller transform (pairs ``sqrt(-2 ln u1) {cos, sin}(2π u2)``)."""
    pairs = (size + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # (0, 1], keeps the log finite
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(2.0 * np.pi * u2)
    out[1::2] = radius * np.sin(2.0 * np.pi * u2)
    return out[:size]


def gen_trial_poly(spec, trial_index):
    """Exactly sparse trial polynomial: ``s`` distinct degrees drawn
    uniformly from ``[0, N]``, coefficients independent fair ±1 signs."""
    rng = _trial_rng(spec.seed, trial_index)
    degrees = rng.choice(spec.n_max + 1, size=spec.s, replace=False)
    signs = np.where(rng.random(spec.s) < 0.5, -1.0, 1.0)
    entries = {int(n): float(c) for n, c in zip(degrees, signs)}
    return SparseExpansion(Basis.LEGENDRE, spec.n_max, entries)


def gen_noisy_trial(spec, trial_index):
    """±1 signal on ``s`` random degrees plus a dense Gaussian floor.

    The floor is renormalized so that ``log10(s / sum b²)`` equals
    ``spec.noise_log_snr`` exactly. Returns the dense expansion together
    with the true signal support.
    """
    if spec.mode != "noisy":
        raise ValueError("spec is not in noisy mode")
    rng = _trial_rng(spec.seed, trial_index)
    degrees = rng.choice(spec.n_max + 1, size=spec.s, replace=False)
    signs = np.where(rng.random(spec.s) < 0.5, -1.0, 1.0)
    entries = {int(n): float(c) for n, c in zip(degrees, signs)}
    rest = np.setdiff1d(np.arange(spec.n_max + 1), degrees)
    noise = box_muller(rng, rest.shape[0])
    target = spec.s * 10.0 ** (-spec.noise_log_snr)
    noise *= math.sqrt(target / float(noise @ noise))
    for n, b in zip(rest, noise):
        if b != 0.0:
            entries[int(n)] = float(b)
    dense = SparseExpansion(Basis.LEGENDRE, spec.n_max, entries)
    return dense, tuple(sorted(int(n) for n in degrees))


def l2_error_on_support(truth, recovered, support):
    """``sqrt(sum_{n in S} (truth(n) - recovered(n))²)``, absent entries 0."""
    total = 0.0
    for n in support:
        diff = truth.coefficient(n) - recovered.coefficient(n)
        total += diff * diff
    return math.sqrt(total)


def _baseline_m_range(mode):
    return range(1, 46) if mode == "noisy" else range(1, 26)


def _run_baseline(truth, spec, cfg):
    counter = _CountingFunction(truth)
    t0 = time.perf_counter()
    approx = dense_legendre_transform(counter, spec.n_max, cfg.r, m_terms=1)
    wall = (time.perf_counter() - t0) - counter.seconds
    return approx, wall, counter

def _baseline_best_error(truth, spec, cfg, support, first_error, counter):
    best = first_error
    for m_terms in _baseline_m_range(spec.mode):
        if m_terms == 1:
            continue
        approx = dense_legendre_transform(counter, spec.n_max, cfg.r, m_terms=m_terms)
        best = min(best, l2_error_on_support(truth, approx, support))
    return best


def run_experiment(spec, cfg, out_path=None, baseline_m_sweep=False,
                   include_baseline=True, append=False):
    """Run all trials of ``spec``, write CSV, and return the summary.

    Per trial the signal is generated deterministically from
    ``(spec.seed, trial)``, recovered with a per-trial reseeded copy of
    ``cfg``, and (optionally) pushed through the dense baseline; errors are
    measured on the true signal support. Per-trial failures are recorded,
    never raised. The CSV gets one row per trial plus one summary row;
    timing columns are the only nondeterministic ones.
    """
    records = []
    sum_err_found = 0.0
    found = 0
    sum_err_base = 0.0
    sum_t_rec = 0.0
    sum_t_base = 0.0
    sum_fev = 0.0
    for trial in range(spec.trials):
        if spec.mode == "noisy":
            truth, support = gen_noisy_trial(spec, trial)
        else:
            truth = gen_trial_poly(spec, trial)
            support = truth.degrees()
        trial_seed = int(np.random.SeedSequence([cfg.seed, spec.seed, trial]).generate_state(1)[0])
        result = recover_sparse_legendre(truth, spec.n_max, replace(cfg, seed=trial_seed))
        err_rec = l2_error_on_support(truth, result.expansion, support)
        ok = result.diagnostics.success and set(support) <= set(result.identified_support)
        if include_baseline:
            approx, t_base, counter = _run_baseline(truth, spec, cfg)
            err_base = l2_error_on_support(truth, approx, support)
            if baseline_m_sweep:
                err_base = _baseline_best_error(truth, spec, cfg, support, err_base, counter)
            base_evals = counter.count
        else:
            t_base = float("nan")
            err_base = float("nan")
            base_evals = 0
        rec = TrialRecord(
            trial_index=trial,
            wall_time_recovery=result.diagnostics.wall_time,
            wall_time_baseline=t_base,
            setup_time_recovery=result.diagnostics.setup_time,
            l2_error_recovery=err_rec,
            l2_error_baseline=err_base,
            support_found=ok,
            f_evaluations=result.diagnostics.f_evaluations,
            baseline_f_evaluations=base_evals,
            sft_samples=result.diagnostics.sft_samples,
            cg_iterations=result.diagnostics.cg_iterations,
        )
        records.append(rec)
        if ok:
            found += 1
            sum_err_found += err_rec
        if include_baseline:
            sum_err_base += err_base
            sum_t_base += t_base
        sum_t_rec += rec.wall_time_recovery
        sum_fev += rec.f_evaluations

    # cheap conditioning surrogate: one plan/support probe per experiment
    try:
        probe_support = (gen_noisy_trial(spec, 0)[1] if spec.mode == "noisy"
                         else gen_trial_poly(spec, 0).degrees())
        from .sampling import default_sample_count

        m = cfg.m if cfg.m is not None else default_sample_count(cfg.s, spec.n_max)
        plan = sample_chebyshev_points(m, cfg.plan_seed(), spec.n_max)
        probe_kappa = submatrix_condition(plan, probe_support)
    except ArithmeticError:
        probe_kappa = float("inf")

    n_trials = spec.trials
    summary = ExperimentSummary(
        n_max=spec.n_max,
        s=spec.s,
        noise_log_snr=spec.noise_log_snr,
        trials=n_trials,
        support_found_rate=found / n_trials,
        mean_error_recovery_when_found=(sum_err_found / found) if found else float("nan"),
        mean_error_baseline=(sum_err_base / n_trials) if include_baseline else float("nan"),
        mean_time_recovery=sum_t_rec / n_trials,
        mean_time_baseline=(sum_t_base / n_trials) if include_baseline else float("nan"),
        mean_f_evaluations=sum_fev / n_trials,
        f_eval_fraction=sum_fev / n_trials / (spec.n_max + 1),
        probe_kappa=probe_kappa,
        records=tuple(records),
    )
    if out_path is not None:
        _write_csv(out_path, spec, cfg, summary, append=append)
    return summary


def _csv_header_lines(spec, cfg):
    sft = cfg.resolved_sft()
    return [
        "# sparselegendre bench csv v1",
        f"# columns: {CSV_SCHEMA}",
        f"# spec: n={spec.n_max} s={spec.s} trials={spec.trials} mode={spec.mode}"
        f" noise_log_snr={spec.noise_log_snr} seed={spec.seed}",
        f"# recovery: r={cfg.r!r} m={cfg.m} cg_tol={cfg.cg_tol!r} expand_k={cfg.expand_k}"
        f" seed={cfg.seed}",
        f"# sft: sparsity={sft.sparsity} trials={sft.trials}"
        f" bucket_factor={sft.bucket_factor!r}",
    ]


def _write_csv(out_path, spec, cfg, summary, append=False):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if not append:
        for line in _csv_header_lines(spec, cfg):
            buf.write(line + "\n")
        writer.writerow(CSV_SCHEMA.split(","))
    snr = "" if spec.noise_log_snr is None else repr(spec.noise_log_snr)
    for rec in summary.records:
        writer.writerow([
            "trial", spec.n_max, spec.s, snr, rec.trial_index,
            int(rec.support_found), repr(rec.l2_error_recovery),
            repr(rec.l2_error_baseline), f"{rec.wall_time_recovery:.6f}",
            f"{rec.wall_time_baseline:.6f}", f"{rec.setup_time_recovery:.6f}",
            rec.f_evaluations, repr(rec.f_evaluations / (spec.n_max + 1)),
            rec.baseline_f_evaluations, rec.sft_samples, rec.cg_iterations,
        ])
    writer.writerow([
        "summary", spec.n_max, spec.s, snr, spec.trials,
        repr(summary.support_found_rate),
        repr(summary.mean_error_recovery_when_found),
        repr(summary.mean_error_baseline),
        f"{summary.mean_time_recovery:.6f}",
        f"{summary.mean_time_baseline:.6f}", "",
        repr(summary.mean_f_evaluations),
        repr(summary.f_eval_fraction),
        "", "", repr(summary.probe_kappa),
    ])
    mode = "a" if append else "w"
    with open(out_path, mode, encoding="utf-8") as fh:
        fh.write(buf.getvalue())
