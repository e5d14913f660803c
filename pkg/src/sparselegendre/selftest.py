"""Built-in invariant suite behind ``sparselegendre-bench selftest``.

Fast, deterministic spot checks of every subsystem; the pytest suite runs
the same properties at full strength.
"""

from __future__ import annotations

import numpy as np

from .bench import TrialSpec, gen_trial_poly, l2_error_on_support
from .cgls import LsqProblem, cg_normal_solve
from .fourier import PeriodicSampler, SftParams, dft_dense, fft_radix2, sft, top_s_oracle
from .orthopoly import SparseExpansion
from .recovery import RecoveryConfig, recover_sparse_chebyshev, recover_sparse_legendre
from .resample import (
    ResampleMap,
    diag_bracket,
    forward_matrix,
    inverse_entry,
    inverse_entry_via_sums,
    inverse_matrix,
    log_inverse_diag,
    resampled_sample,
)
from .sampling import (
    coefficient_scale,
    sample_chebyshev_points,
    sampling_matrix,
    submatrix_condition,
    weighted_samples,
)


def check_inverse_identity():
    for r in (1.0, 0.9):
        rmap = ResampleMap(r, 64)
        prod = forward_matrix(rmap) @ inverse_matrix(rmap)
        dev = np.max(np.abs(prod - np.eye(65)))
        assert dev <= 1e-10, f"identity deviation {dev:.2e} at r={r}"


def check_inverse_closed_form():
    for i in range(0, 21):
        for j in range(i, 21):
            ref = inverse_entry_via_sums(i, j, 1.0)
            got = inverse_entry(i, j, ResampleMap(1.0, 21))
            if ref != 0.0:
                assert abs(got - ref) <= 1e-11 * abs(ref)


def check_diag_bracket():
    for n in range(1, 201):
        lo, hi = diag_bracket(n, 1.0)
        lg = float(log_inverse_diag(n, 1.0))
        assert lo - 1e-12 <= lg <= hi + 1e-12, f"bracket violated at n={n}"


def check_fft():
    rng = np.random.default_rng(3)
    a = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    ref = np.array([np.sum(a * np.exp(-2j * np.pi * k * np.arange(256) / 256))
                    for k in range(256)])
    assert np.max(np.abs(fft_radix2(a) - ref)) < 1e-9
    assert np.max(np.abs(fft_radix2(fft_radix2(a), inverse=True) - a)) < 1e-12


def check_parseval():
    rng = np.random.default_rng(4)
    m = 512
    freqs = rng.choice(np.arange(-100, 101), size=12, replace=False)
    coefs = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    xs = -np.pi + 2 * np.pi * np.arange(m) / m
    samples = np.zeros(m, dtype=complex)
    for w, c in zip(freqs, coefs):
        samples += c * np.exp(1j * w * xs)
    spec = dft_dense(samples, (-128, 128))
    total = sum(abs(c) ** 2 for c in spec.entries.values())
    assert abs(total - np.mean(np.abs(samples) ** 2)) <= 1e-10 * total


def check_sft_vs_oracle():
    rng = np.random.default_rng(5)
    for trial in range(5):
        freqs = rng.choice(np.arange(-512, 513), size=5, replace=False)
        phases = np.exp(2j * np.pi * rng.random(5))

        def fn(x, freqs=freqs, phases=phases):
            out = np.zeros(x.shape, dtype=complex)
            for w, c in zip(freqs, phases):
                out += c * np.exp(1j * w * x)
            return out

        sampler = PeriodicSampler(fn, 510)
        outcome = sft(sampler, SftParams(sparsity=5, trials=7, bucket_factor=4.0,
                                         seed=trial))
        oracle = top_s_oracle(sampler, 5)
        assert outcome.success
        assert outcome.spectrum.support() == oracle.support(), "support mismatch"


def check_spectrum_symmetry():
    f = SparseExpansion.legendre({3: 1.0, 8: -2.0}, 16)
    m = 128
    xs = -np.pi + 2 * np.pi * np.arange(m) / m
    spec = dft_dense(resampled_sample(f, 1.0, xs), (-18, 18))
    assert abs(spec.coefficient(1)) < 1e-12
    for w in range(2, 19):
        lhs = spec.coefficient(w)
        rhs = -spec.coefficient(2 - w)
        assert abs(lhs - rhs) <= 1e-10 * (1 + abs(lhs))


def check_weighted_samples():
    f = SparseExpansion.legendre({2: 1.5, 9: -0.25}, 16)
    plan = sample_chebyshev_points(63, seed=11, n_max=16)
    y = weighted_samples(f, plan)
    a = sampling_matrix(plan, f.degrees())
    c = np.array([f.coefficient(n) for n in f.degrees()]) / coefficient_scale(f.degrees())
    assert np.max(np.abs(y - a @ c)) < 1e-12


def check_cg_oracle():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((60, 12))
    y = rng.standard_normal(60)
    res = cg_normal_solve(LsqProblem.from_matrix(a, y, 1e-12))
    ref, *_ = np.linalg.lstsq(a, y, rcond=None)
    assert np.linalg.norm(res.z - ref) < 1e-8


def check_conditioning():
    rng = np.random.default_rng(8)
    plan = sample_chebyshev_points(1023, seed=21, n_max=4096)
    support = np.sort(rng.choice(4097, size=10, replace=False))
    kappa = submatrix_condition(plan, support)
    assert kappa < 4.0, f"kappa {kappa:.2f}"


def check_chebyshev_roundtrip():
    g = SparseExpansion.chebyshev({5: 1.0, 40: -0.5, 321: 2.0}, 1024)
    cfg = RecoveryConfig(s=3, seed=12)
    rec = recover_sparse_chebyshev(g, 1024, cfg)
    assert rec.degrees() == g.degrees()
    for n in g.degrees():
        assert abs(rec.coefficient(n) - g.coefficient(n)) < 1e-10


def check_end_to_end():
    spec = TrialSpec(n_max=32768, s=8, trials=1, seed=5)
    truth = gen_trial_poly(spec, 0)
    cfg = RecoveryConfig(s=8, seed=33)
    result = recover_sparse_legendre(truth, spec.n_max, cfg)
    assert result.diagnostics.success
    assert set(truth.degrees()) <= set(result.identified_support)
    err = l2_error_on_support(truth, result.expansion, truth.degrees())
    assert err < 1e-7, f"l2 error {err:.2e}"
    assert result.diagnostics.f_evaluations < spec.n_max


CHECKS = [
    ("inverse map identity", check_inverse_identity),
    ("inverse closed form vs exact sums", check_inverse_closed_form),
    ("inverse diagonal envelope", check_diag_bracket),
    ("radix-2 fft", check_fft),
    ("dense transform parseval", check_parseval),
    ("sparse transform vs dense oracle", check_sft_vs_oracle),
    ("resampled spectrum mirror symmetry", check_spectrum_symmetry),
    ("weighted samples consistency", check_weighted_samples),
    ("cg least squares vs dense solve", check_cg_oracle),
    ("sampling submatrix conditioning", check_conditioning),
    ("chebyshev recovery roundtrip", check_chebyshev_roundtrip),
    ("sparse legendre end to end", check_end_to_end),
]


def run_all(verbose=False):
    results = []
    for name, fn in CHECKS:
        try:
            fn()
            ok = True
            if verbose:
                print(f"PASS {name}")
        except Exception as exc:  # noqa: BLE001 - reported, not raised
            ok = False
            if verbose:
                print(f"FAIL {name}: {exc}")
        results.append((name, ok))
    return results
