"""Dense and sparse Fourier analysis of 2π-periodic functions.

Coefficient convention: ``c(ω) = (1/2π) ∫_{-π}^{π} f(x) e^{-iωx} dx``, so a
pure mode ``f(x) = e^{iωx}`` has ``c(ω) = 1``.

The sparse transform (:func:`sft`) recovers the dominant modes of a
band-limited sampler from a number of samples scaling with the requested
sparsity times ``log`` of the band width, never with the band width itself.
It aliases the spectrum into a prime number of buckets via arithmetic
progressions with random offsets, reads each surviving frequency off the
phase progression between shifted sample grids one bit at a time, and keeps
only frequencies that repeat across independent repetitions (coefficients
are estimated by coordinatewise medians over those repetitions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "FourierSparse",
    "PeriodicSampler",
    "SftParams",
    "SftOutcome",
    "fft_radix2",
    "dft_dense",
    "sft",
    "top_s_oracle",
]

_TWIDDLE_CACHE: dict = {}
_BITREV_CACHE: dict = {}
_DFT_CACHE: dict = {}

# working dynamic range of the sparse transform: buckets this far below the
# loudest bucket are treated as empty
_BUCKET_FLOOR = 1e-10


@dataclass(frozen=True)
class FourierSparse:
    """Sparse spectrum: map ``frequency -> complex coefficient`` on a band."""

    entries: dict
    band: tuple

    def __post_init__(self):
        lo, hi = self.band
        if lo > hi:
            raise ValueError("empty band")
        cleaned = {}
        for w, c in self.entries.items():
            w = int(w)
            if w < lo or w > hi:
                raise ValueError(f"frequency {w} outside band [{lo}, {hi}]")
            c = complex(c)
            if c == 0:
                continue
            cleaned[w] = c
        object.__setattr__(self, "entries", cleaned)

    def coefficient(self, omega):
        return self.entries.get(int(omega), 0.0 + 0.0j)

    def support(self):
        return tuple(sorted(self.entries))

    def synthesize(self, x):
        """Evaluate ``sum_ω c(ω) e^{iωx}`` at the given points."""
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros(x.shape, dtype=np.complex128)
        for w, c in self.entries.items():
            out += c * np.exp(1j * w * x)
        return out

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class PeriodicSampler:
    """Vectorized point evaluator of a 2π-periodic function.

    ``fn`` receives a 1-d float array and must return the matching complex
    (or real) values. ``band_limit`` declares that every Fourier coefficient
    at ``|ω| > band_limit + 2`` vanishes.
    """

    fn: Callable
    band_limit: int

    @property
    def band(self):
        return (-self.band_limit - 2, self.band_limit + 2)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        wrapped = np.mod(x + np.pi, 2.0 * np.pi) - np.pi
        return np.asarray(self.fn(wrapped))


@dataclass(frozen=True)
class SftParams:
    """Tunables of the randomized sparse Fourier transform."""

    sparsity: int
    trials: int = 7
    bucket_factor: float = 4.0
    seed: int = 0

    def __post_init__(self):
        if self.sparsity < 1:
            raise ValueError("sparsity must be >= 1")
        if self.trials < 1 or self.trials % 2 == 0:
            raise ValueError("trials must be a positive odd integer")
        if self.bucket_factor < 1.0:
            raise ValueError("bucket_factor must be >= 1")


@dataclass(frozen=True)
class SftOutcome:
    spectrum: FourierSparse
    success: bool
    samples_used: int


def _bit_reverse_indices(n):
    idx = _BITREV_CACHE.get(n)
    if idx is None:
        bits = n.bit_length() - 1
        idx = np.zeros(n, dtype=np.intp)
        ar = np.arange(n)
        for b in range(bits):
            idx |= ((ar >> b) & 1) << (bits - 1 - b)
        _BITREV_CACHE[n] = idx
    return idx


def _twiddles(n):
    tw = _TWIDDLE_CACHE.get(n)
    if tw is None:
        tw = np.exp(-2j * np.pi * np.arange(n // 2) / n)
        _TWIDDLE_CACHE[n] = tw
    return tw


def fft_radix2(a, inverse=False):
    """Iterative radix-2 FFT with bit-reversal reordering.

    Forward transform computes ``A_k = sum_q a_q e^{-2πi kq/n}``; the inverse
    applies the conjugate twiddles and divides by ``n``. Length must be a
    power of two.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if n == 0 or (n & (n - 1)) != 0:
        raise ValueError("length must be a power of two")
    out = a[_bit_reverse_indices(n)].copy()
    tw_full = _twiddles(n)
    if inverse:
        tw_full = np.conj(tw_full)
    size = 2
    while size <= n:
        half = size // 2
        tw = tw_full[:: n // size]
        view = out.reshape(-1, size)
        t = view[:, half:] * tw
        even = view[:, :half].copy()
        view[:, :half] = even + t
        view[:, half:] = even - t
        size *= 2
    if inverse:
        out /= n
    return out


def dft_dense(samples, band):
    """All Fourier coefficients on ``band`` from equispaced samples.

    ``samples`` must live on the grid ``x_q = -π + 2πq/M`` with ``M`` a power
    of two spanning the band (``M >= hi - lo``; at equality the two extreme
    frequencies share a bin, the usual grid convention). Under that condition
    the result is exact (to rounding) for any trigonometric polynomial
    supported inside the band.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    m = samples.shape[0]
    lo, hi = int(band[0]), int(band[1])
    if m < hi - lo:
        raise ValueError(f"need at least {hi - lo} samples for band [{lo}, {hi}]")
    bins = fft_radix2(samples) / m
    omegas = np.arange(lo, hi + 1)
    # grid starts at -π, so bin ω picks up the phase e^{iωπ} = (-1)^ω
    signs = np.where(omegas % 2 == 0, 1.0, -1.0)
    coefs = signs * bins[np.mod(omegas, m)]
    entries = {int(w): complex(c) for w, c in zip(omegas, coefs) if c != 0}
    return FourierSparse(entries, (lo, hi))


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _primes_ge(start, count):
    out = []
    n = max(int(start), 2)
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n += 1
    return out


def _dft_matrix(b):
    mat = _DFT_CACHE.get(b)
    if mat is None:
        p = np.arange(b)
        mat = np.exp(-2j * np.pi * np.outer(p, p) / b)
        if len(_DFT_CACHE) > 64:
            _DFT_CACHE.clear()
        _DFT_CACHE[b] = mat
    return mat


def sft(sampler, params):
    """Randomized sparse Fourier transform of a band-limited sampler.

    Returns an :class:`SftOutcome`. On an exactly sparse input whose
    coefficients all exceed the working dynamic range the true support and
    coefficients are recovered with failure probability decreasing in
    ``params.trials``. A failure (energy present but no frequency consistent
    across repetitions) is reported through ``success=False`` with an empty
    spectrum, never by silent truncation.
    """
    lo, hi = sampler.band
    width = hi - lo + 1
    wmod = 1 << max(int(math.ceil(math.log2(width))), 1)
    levels = wmod.bit_length() - 1
    n_buckets = _primes_ge(max(math.ceil(params.bucket_factor * params.sparsity), 3),
                           params.trials)
    streams = np.random.SeedSequence(params.seed).spawn(params.trials)

    samples_used = 0
    votes: dict = {}
    energy = 0.0
    for t in range(params.trials):
        rng = np.random.default_rng(streams[t])
        b = n_buckets[t]
        theta = rng.uniform(0.0, 2.0 * np.pi)
        shifts = np.concatenate(([0.0], np.pi / (2.0 ** np.arange(levels))))
        grid = theta + 2.0 * np.pi * np.arange(b) / b
        pts = (shifts[:, None] + grid[None, :]).ravel()
        vals = sampler(pts).astype(np.complex128).reshape(levels + 1, b)
        samples_used += pts.shape[0]

        buckets = vals @ _dft_matrix(b) / b  # (levels+1, b)
        base = buckets[0]
        mags = np.abs(base)
        top = float(mags.max())
        energy = max(energy, top)
        if top <= 0.0:
            continue
        live = mags > _BUCKET_FLOOR * top

        # unwrap each live bucket's frequency one bit at a time
        know = np.zeros(b, dtype=np.int64)
        conj_base = np.conj(base)
        for lvl in range(levels):
            ratio = buckets[lvl + 1] * conj_base
            pred = np.exp(1j * know * (np.pi / (2.0 ** lvl)))
            bit = (ratio * np.conj(pred)).real < 0.0
            know += bit.astype(np.int64) << lvl

        omega = lo + np.mod(know - lo, wmod)
        bucket_of = np.mod(omega, b)
        ok = live & (omega <= hi) & (bucket_of == np.arange(b))
        for j in np.nonzero(ok)[0]:
            w = int(omega[j])
            # phase-align every shifted grid before averaging: the target
            # mode contributes identically to all of them while colliding
            # tail modes rotate, so the estimate variance drops ~(levels+1)x
            est = complex(np.mean(buckets[:, j] * np.exp(-1j * w * shifts)))
            est *= np.exp(-1j * w * theta)
            votes.setdefault(w, []).append(est)

    min_votes = 2 if params.trials >= 3 else 1
    accepted = {}
    for w in sorted(votes):
        vals = votes[w]
        if len(vals) < min_votes:
            continue
        arr = np.array(vals, dtype=np.complex128)
        accepted[w] = complex(np.median(arr.real) + 1j * np.median(arr.imag))

    cap = max(int(math.ceil(params.sparsity * params.bucket_factor)), params.sparsity)
    if len(accepted) > cap:
        ranked = sorted(accepted, key=lambda w: (-abs(accepted[w]), abs(w), w))
        accepted = {w: accepted[w] for w in ranked[:cap]}

    success = bool(accepted) or energy <= 0.0
    spectrum = FourierSparse(accepted, (lo, hi))
    return SftOutcome(spectrum, success, samples_used)


def _select_top(entries, s):
    # magnitude descending; near-ties (1e-9 relative) broken by |ω| then ω
    items = sorted(entries.items(), key=lambda kv: (-abs(kv[1]), abs(kv[0]), kv[0]))
    groups = []
    for w, c in items:
        if groups and abs(abs(c) - groups[-1][0]) <= 1e-9 * (abs(c) + groups[-1][0]):
            groups[-1][1].append((w, c))
        else:
            groups.append([abs(c), [(w, c)]])
    out = []
    for _, members in groups:
        members.sort(key=lambda wc: (abs(wc[0]), wc[0]))
        out.extend(members)
    return dict(out[:s])


def top_s_oracle(sampler, s):
    """Exact best s-term spectrum via a dense transform (testing oracle).

    Ties in magnitude are broken toward smaller ``|ω|``, then smaller ``ω``.
    """
    lo, hi = sampler.band
    width = hi - lo + 1
    if width > (1 << 24):
        raise ValueError("band too wide for the dense oracle")
    m = 1 << max(int(math.ceil(math.log2(width))), 1)
    xs = -np.pi + 2.0 * np.pi * np.arange(m) / m
    dense = dft_dense(sampler(xs), (lo, hi))
    return FourierSparse(_select_top(dense.entries, s), (lo, hi))
