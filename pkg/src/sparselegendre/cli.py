"""Benchmark and recovery command line.

Subcommands::

    recover        recover a sparse expansion from a coefficient file
    bench-runtime  recovery vs dense baseline across a range of N
    bench-error    error/success statistics at one (N, s) point
    bench-noise    noise-robustness sweep over a log-SNR grid
    selftest       run the built-in invariant suite

The coefficient file format is plain text with one ``degree value`` pair
per line; ``#`` starts a comment.
"""

from __future__ import annotations

import argparse
import sys

from .bench import TrialSpec, run_experiment
from .orthopoly import Basis, SparseExpansion
from .recovery import RecoveryConfig, recover_sparse_legendre, result_to_text

DEFAULT_SNR_GRID = (1.0, 1.5, 2.0, 2.5, 3.0)


def _add_common(p):
    p.add_argument("--n", default="131072",
                   help="max degree N; comma-separated list sweeps N (default 131072)")
    p.add_argument("--s", type=int, default=20, help="sparsity (default 20)")
    p.add_argument("--r", type=float, default=1.0 - 1e-8,
                   help="resampling radius in (0,1] (default 1-1e-8)")
    p.add_argument("--trials", type=int, default=100, help="trials per point")
    p.add_argument("--seed", type=int, default=0, help="experiment seed")
    p.add_argument("--m-samples", type=int, default=None,
                   help="override the estimation-stage sample count m")
    p.add_argument("--cg-tol", type=float, default=1e-10, help="CG tolerance")
    p.add_argument("--expand-k", type=int, default=None,
                   help="candidate-expansion width (default off)")
    p.add_argument("--baseline-m-sweep", action="store_true",
                   help="per-trial best baseline error over the truncation range")
    p.add_argument("--out", default=None, help="CSV output path")


def _config(args, seed):
    return RecoveryConfig(s=args.s, r=args.r, m=args.m_samples,
                          cg_tol=args.cg_tol, expand_k=args.expand_k, seed=seed)


def _print_summary(summary):
    parts = [f"n={summary.n_max}", f"s={summary.s}"]
    if summary.noise_log_snr is not None:
        parts.append(f"log_snr={summary.noise_log_snr}")
    parts.extend([
        f"trials={summary.trials}",
        f"support_rate={summary.support_found_rate:.3f}",
        f"err_recovery|found={summary.mean_error_recovery_when_found:.3e}",
        f"err_baseline={summary.mean_error_baseline:.3e}",
        f"t_recovery={summary.mean_time_recovery:.4f}s",
        f"t_baseline={summary.mean_time_baseline:.4f}s",
        f"f_evals={summary.mean_f_evaluations:.0f}",
        f"f_evals/N={summary.f_eval_fraction:.4f}",
        f"probe_kappa={summary.probe_kappa:.3f}",
    ])
    print("  ".join(parts))


def _read_coefficient_file(path):
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            deg_s, val_s = line.split()
            entries[int(deg_s)] = float(val_s)
    return entries


def cmd_recover(args):
    entries = _read_coefficient_file(args.coeffs)
    n_max = int(args.n.split(",")[0])
    if entries and max(entries) > n_max:
        n_max = max(entries)
    f = SparseExpansion(Basis.LEGENDRE, n_max, entries)
    cfg = _config(args, args.seed)
    result = recover_sparse_legendre(f, n_max, cfg)
    text = result_to_text(result)
    print(text, end="")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if result.diagnostics.success else 1


def cmd_bench_runtime(args):
    n_values = [int(tok) for tok in args.n.split(",")]
    ok = True
    for i, n in enumerate(n_values):
        spec = TrialSpec(n_max=n, s=args.s, trials=args.trials, seed=args.seed)
        cfg = _config(args, args.seed)
        summary = run_experiment(spec, cfg, out_path=args.out,
                                 baseline_m_sweep=args.baseline_m_sweep,
                                 append=(i > 0 and args.out is not None))
        _print_summary(summary)
        ok = ok and summary.support_found_rate > 0
    return 0 if ok else 1


def cmd_bench_error(args):
    n = int(args.n.split(",")[0])
    spec = TrialSpec(n_max=n, s=args.s, trials=args.trials, seed=args.seed)
    cfg = _config(args, args.seed)
    summary = run_experiment(spec, cfg, out_path=args.out,
                             baseline_m_sweep=args.baseline_m_sweep)
    _print_summary(summary)
    return 0


def cmd_bench_noise(args):
    n = int(args.n.split(",")[0])
    for i, snr in enumerate(DEFAULT_SNR_GRID):
        spec = TrialSpec(n_max=n, s=args.s, trials=args.trials, mode="noisy",
                         noise_log_snr=snr, seed=args.seed)
        cfg = _config(args, args.seed)
        summary = run_experiment(spec, cfg, out_path=args.out,
                                 baseline_m_sweep=args.baseline_m_sweep,
                                 append=(i > 0 and args.out is not None))
        _print_summary(summary)
    return 0


def cmd_selftest(args):
    from . import selftest

    results = selftest.run_all(verbose=True)
    failed = [name for name, ok in results if not ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def main(argv=None):
    parser = argparse.ArgumentParser(prog="sparselegendre-bench",
                                     description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recover", help="recover a sparse expansion from a coefficient file")
    p.add_argument("--coeffs", required=True, help="text file of 'degree value' lines")
    _add_common(p)
    p.set_defaults(fn=cmd_recover)

    p = sub.add_parser("bench-runtime", help="runtime scaling across N")
    _add_common(p)
    p.set_defaults(fn=cmd_bench_runtime)

    p = sub.add_parser("bench-error", help="error statistics at one point")
    _add_common(p)
    p.set_defaults(fn=cmd_bench_error)

    p = sub.add_parser("bench-noise", help="noise-robustness sweep")
    _add_common(p)
    p.set_defaults(fn=cmd_bench_noise)

    p = sub.add_parser("selftest", help="run the built-in invariant suite")
    _add_common(p)
    p.set_defaults(fn=cmd_selftest)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
