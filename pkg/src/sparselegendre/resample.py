"""Coupling between Legendre coefficients and the Fourier spectrum of a
resampled function.

For ``r in (0, 1]`` define the resampled function

    f_r(x) = (1 - r^2 e^{2ix}) * f( (r^{-1} e^{-ix} + r e^{ix}) / 2 ).

For ``r < 1`` the polynomial ``f`` is evaluated on a Bernstein ellipse in
the complex plane; at ``r = 1`` this collapses to
``f_1(x) = (1 - e^{2ix}) f(cos x)``, which needs only real evaluations.

If ``f`` has degree at most ``N``, the Fourier coefficients ``c_r(ω)`` of
``f_r`` vanish for ``ω < -N``, and the Legendre coefficients of ``f`` are an
upper-triangular linear image of ``(c_r(0), ..., c_r(-N))``:

    ftilde(i) = sum_j  w_{i,j} * c_r(-i - 2j),

with the weights ``w`` from :func:`~sparselegendre.orthopoly.fourier_to_legendre_weight`.
This module evaluates that triangular map, its closed-form inverse (each
entry a ratio of factorials and a half-integer gamma factor, evaluated in
log space with the vanishing-denominator offsets special-cased exactly),
the diagonal-dominance decay bounds of the inverse as checkable predicates,
and the dense O(N log N) transform used as a baseline by the benchmarks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .fourier import FourierSparse, fft_radix2
from .orthopoly import (
    Basis,
    SparseExpansion,
    fourier_to_legendre_weight,
    log_fourier_to_legendre_weight,
)

__all__ = [
    "ResampleMap",
    "SupportProfile",
    "resampled_sample",
    "forward_entry",
    "forward_matrix",
    "inverse_entry",
    "inverse_entries",
    "inverse_matrix",
    "inverse_entry_via_sums",
    "inverse_diag",
    "log_inverse_diag",
    "diag_bracket",
    "row_decay_bound",
    "column_decay_bound",
    "apply_inverse",
    "dense_legendre_transform",
    "right_distance",
]

_LOG4 = math.log(4.0)
_ROW_DECAY_C = math.exp(1.0 / 3.0) / (2.0 * math.sqrt(math.pi))
_COL_DECAY_C = math.exp(1.0 / 3.0) / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class ResampleMap:
    """The pair ``(r, n_max)`` fixing the triangular coefficient map."""

    r: float
    n_max: int

    def __post_init__(self):
        if not (0.0 < self.r <= 1.0):
            raise ValueError("r must lie in (0, 1]")
        if self.n_max < 0:
            raise ValueError("n_max must be nonnegative")


def ellipse_point(r, x):
    """Evaluation locus ``(r^{-1} e^{-ix} + r e^{ix}) / 2`` (real iff r=1)."""
    x = np.asarray(x, dtype=np.float64)
    if r == 1.0:
        return np.cos(x)
    return 0.5 * (np.exp(-1j * x) / r + r * np.exp(1j * x))


def resampled_sample(f, r, x):
    """Sample ``f_r`` at real point(s) ``x``.

    ``f`` may be a :class:`SparseExpansion` or any callable accepting the
    (complex for ``r < 1``, real for ``r = 1``) evaluation points as an
    array. Raises for ``r`` outside ``(0, 1]``.
    """
    if not (0.0 < r <= 1.0):
        raise ValueError("r must lie in (0, 1]")
    scalar = np.isscalar(x) or np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    z = ellipse_point(r, x)
    vals = np.asarray(f(z))
    out = (1.0 - r * r * np.exp(2j * x)) * vals
    return out[0] if scalar else out


def forward_entry(i, j, rmap):
    """Entry ``(i, j)`` of the triangular map from the spectrum of ``f_r``
    (frequencies ``0, -1, ..., -n_max``) to the Legendre coefficients."""
    n = rmap.n_max
    if not (0 <= i <= n and 0 <= j <= n):
        raise IndexError(f"indices ({i}, {j}) outside [0, {n}]^2")
    if j < i or (j - i) % 2 != 0:
        return 0.0
    return fourier_to_legendre_weight(i, (j - i) // 2, rmap.r)


def forward_matrix(rmap):
    """Dense (n_max+1)^2 forward map; intended for moderate n_max."""
    n = rmap.n_max
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    valid = (j >= i) & ((j - i) % 2 == 0)
    out = np.zeros((n + 1, n + 1))
    half = ((j - i) // 2)[valid]
    out[valid] = fourier_to_legendre_weight(i[valid], half, rmap.r)
    return out


def _gamma_ratio_parts(d):
    """Sign and log magnitude of ``Γ(3/2) / (d! Γ(3/2 - d))`` elementwise.

    The d >= 3 branch uses the reflection/half-integer rewriting into ordinary
    factorials; d in {0, 1, 2} (where that rewriting divides by zero) take
    their exact values 1, 1/2, -1/8.
    """
    d = np.asarray(d, dtype=np.int64)
    sign = np.where(d % 2 == 1, 1.0, -1.0)  # (-1)^(d+1)
    sign = np.where(d == 0, 1.0, sign)
    logmag = np.full(d.shape, -np.inf)
    logmag = np.where(d == 0, 0.0, logmag)
    logmag = np.where(d == 1, math.log(0.5), logmag)
    logmag = np.where(d == 2, math.log(0.125), logmag)
    big = d >= 3
    if np.any(big):
        db = d[big].astype(np.float64)
        lm = (
            -math.log(2.0)
            - (db - 2.0) * _LOG4
            + np.log(db - 1.5)
            - np.log(db)
            - np.log(db - 1.0)
            + gammaln(2.0 * db - 3.0)
            - 2.0 * gammaln(db - 1.0)
        )
        logmag[big] = lm
    return sign, logmag


def inverse_entries(i, j, r):
    """Entries of the inverse map, elementwise over broadcastable ``i, j``.

    Zero below the diagonal and on parity mismatch; otherwise the closed
    forms (even/odd rows) evaluated via log-gamma.
    """
    i, j = np.broadcast_arrays(np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64))
    out = np.zeros(i.shape, dtype=np.float64)
    valid = (j >= i) & ((j - i) % 2 == 0)
    if not np.any(valid):
        return out
    iv = i[valid].astype(np.float64)
    jv = j[valid].astype(np.float64)
    even = (i[valid] % 2) == 0
    a = np.where(even, iv / 2.0, (iv - 1.0) / 2.0)
    b = np.where(even, jv / 2.0, (jv - 1.0) / 2.0)
    d = np.rint(b - a).astype(np.int64)
    gsign, glog = _gamma_ratio_parts(d)
    s = a + b
    log_even = (
        -s * _LOG4
        + gammaln(2.0 * s + 1.0)
        - 2.0 * gammaln(s + 1.0)
        - 2.0 * a * math.log(r)
        + np.log(2.0 * a + 1.0)
        - np.log(s + 1.0)
    )
    log_odd = (
        -(s + 1.0) * _LOG4
        + gammaln(2.0 * s + 3.0)
        - 2.0 * gammaln(s + 2.0)
        - (2.0 * a + 1.0) * math.log(r)
        + np.log(2.0 * a + 2.0)
        - np.log(s + 2.0)
    )
    logmag = np.where(even, log_even, log_odd) + glog
    parity_sign = np.where(np.rint(s).astype(np.int64) % 2 == 0, 1.0, -1.0)
    out[valid] = parity_sign * gsign * np.exp(logmag)
    return out


def inverse_entry(i, j, rmap):
    """Scalar entry ``(i, j)`` of the inverse map for ``rmap``."""
    n = rmap.n_max
    if not (0 <= i <= n and 0 <= j <= n):
        raise IndexError(f"indices ({i}, {j}) outside [0, {n}]^2")
    return float(inverse_entries(np.int64(i), np.int64(j), rmap.r))


def inverse_matrix(rmap):
    """Dense (n_max+1)^2 inverse map; intended for moderate n_max."""
    n = rmap.n_max
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    return inverse_entries(i, j, rmap.r)


def inverse_entry_via_sums(i, j, r=1.0):
    """Inverse-map entry through the exact finite alternating sums.

    Every term is an exact rational (multinomial * binomial / small integer)
    accumulated in integer arithmetic over one common denominator, so the
    alternating cancellation that destroys a double-precision evaluation of
    these sums is avoided entirely. Serves as the independent cross-check
    for :func:`inverse_entry`.
    """
    if j < i or (j - i) % 2 != 0:
        return 0.0
    fact = math.factorial
    if i % 2 == 0:
        a, b = i // 2, j // 2
        lcm = math.lcm(*range(a + a + 1, a + b + 2))
        total = 0
        for k in range(a, b + 1):
            num = (
                fact(2 * b + 2 * k)
                // (fact(b - k) * fact(b + k) * fact(k + a) * fact(k - a))
                * (1 + 2 * a)
                * (lcm // (k + a + 1))
                * 4 ** (b - k)
            )
            total += -num if (b + k) % 2 else num
        value = Fraction(total, 4 ** (2 * b) * lcm)
        rpow = r ** (-2 * a)
    else:
        a, b = (i - 1) // 2, (j - 1) // 2
        lcm = math.lcm(*range(a + a + 2, a + b + 3))
        total = 0
        for k in range(a, b + 1):
            num = (
                fact(2 * b + 2 * k + 2)
                // (fact(b - k) * fact(b + k + 1) * fact(k - a) * fact(k + a + 1))
                * (2 + 2 * a)
                * (lcm // (k + a + 2))
                * 4 ** (b - k)
            )
            total += -num if (b + k) % 2 else num
        value = Fraction(total, 4 * 4 ** (2 * b) * lcm)
        rpow = r ** (-2 * a - 1)
    return float(value) * rpow


def log_inverse_diag(n, r):
    """log of ``binom(2n, n) 4^{-n} r^{-n}``, the inverse-map diagonal."""
    n = np.asarray(n, dtype=np.float64)
    return gammaln(2.0 * n + 1.0) - 2.0 * gammaln(n + 1.0) - n * _LOG4 - n * math.log(r)


def diag_bracket(n, r):
    """Two-sided envelope of the inverse diagonal magnitude for ``n >= 1``."""
    if n < 1:
        raise ValueError("bracket defined for n >= 1")
    hi = -n * math.log(r) - 0.5 * math.log(math.pi * n)
    lo = hi + math.log1p(-1.0 / (8.0 * n))
    return lo, hi


def inverse_diag(n, r):
    """Diagonal entry ``binom(2n, n) 4^{-n} r^{-n}`` of the inverse map.

    For ``n >= 1`` the value is checked (in log space) against its proven
    two-sided envelope before being returned.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lg = float(log_inverse_diag(n, r))
    if n >= 1:
        lo, hi = diag_bracket(n, r)
        if not (lo - 1e-12 <= lg <= hi + 1e-12):
            raise AssertionError(f"diagonal envelope violated at n={n}, r={r}")
    return math.exp(lg)


def apply_inverse(ftilde, rmap, band):
    """Spectrum values ``c_r(-j)`` for ``j`` in ``band`` from a sparse
    Legendre coefficient vector (exact triangular-inverse application).

    ``band=(j_lo, j_hi)`` is expressed in degree space; the returned
    :class:`FourierSparse` keys the same values by frequency ``-j``. Cost is
    O(band width * stored terms).
    """
    j_lo, j_hi = int(band[0]), int(band[1])
    if not (0 <= j_lo <= j_hi <= rmap.n_max):
        raise ValueError(f"band [{j_lo}, {j_hi}] outside [0, {rmap.n_max}]")
    if ftilde.max_degree > rmap.n_max:
        raise ValueError("expansion degree exceeds the map bound")
    degs, cfs = ftilde.arrays()
    if degs.shape[0] == 0:
        return FourierSparse({}, (-j_hi, -j_lo))
    js = np.arange(j_lo, j_hi + 1)
    weights = inverse_entries(js[:, None], degs[None, :], rmap.r)
    vals = weights @ cfs
    entries = {int(-j): complex(v) for j, v in zip(js, vals) if v != 0.0}
    return FourierSparse(entries, (-j_hi, -j_lo))


def _band_coefficients(samples, lo, hi):
    # array-valued core of dft_dense, for dense pipelines
    m = samples.shape[0]
    bins = fft_radix2(samples) / m
    omegas = np.arange(lo, hi + 1)
    signs = np.where(omegas % 2 == 0, 1.0, -1.0)
    return signs * bins[np.mod(omegas, m)]


def dense_legendre_transform(f, n_max, r, m_terms=1, eval_counter=None):
    """All Legendre coefficients ``0..n_max`` via the dense resampled FFT.

    The O(N log N) baseline: sample ``f_r`` on the smallest power-of-two
    grid of size at least ``2*n_max + 4*m_terms + 4`` (alias-free for every
    frequency the truncated sum touches), transform densely, then apply the
    ``m_terms``-term truncation of the triangular map for every degree.
    """
    if m_terms < 0:
        raise ValueError("m_terms must be nonnegative")
    if not (0.0 < r <= 1.0):
        raise ValueError("r must lie in (0, 1]")
    grid = 1 << max(int(math.ceil(math.log2(2 * n_max + 4 * m_terms + 4))), 2)
    xs = -np.pi + 2.0 * np.pi * np.arange(grid) / grid
    real_coeffs = isinstance(f, SparseExpansion) or getattr(f, "has_real_coefficients", False)
    if real_coeffs:
        # f has real coefficients, so f(conj z) = conj f(z); sample half the grid
        half = grid // 2
        z_half = ellipse_point(r, xs[: half + 1])
        v_half = np.asarray(f(z_half), dtype=np.complex128)
        vals = np.empty(grid, dtype=np.complex128)
        vals[: half + 1] = v_half
        vals[half + 1 :] = np.conj(v_half[1:half][::-1])
    else:
        vals = np.asarray(f(ellipse_point(r, xs)), dtype=np.complex128)
    fr = (1.0 - r * r * np.exp(2j * xs)) * vals
    spec = _band_coefficients(fr, -(n_max + 2 * m_terms), 0)  # index k holds c_r(-n_max-2m+k)
    c_neg = spec[::-1]  # c_neg[k] = c_r(-k)
    degrees = np.arange(n_max + 1, dtype=np.float64)
    coeffs = np.zeros(n_max + 1)
    for j in range(m_terms + 1):
        w = np.exp(log_fourier_to_legendre_weight(degrees, float(j), r))
        coeffs += w * c_neg[2 * j : 2 * j + n_max + 1].real
    entries = {n: c for n, c in enumerate(coeffs) if c != 0.0}
    return SparseExpansion(Basis.LEGENDRE, n_max, entries)


@dataclass(frozen=True)
class SupportProfile:
    """Degrees ranked by coefficient magnitude, for right-distance queries.

    ``ranking`` lists stored degrees by decreasing ``|coefficient|`` (ties
    toward the smaller degree); degrees beyond the stored ones implicitly
    carry zero coefficients.
    """

    ranking: tuple

    @classmethod
    def from_expansion(cls, expansion):
        order = sorted(expansion.entries, key=lambda n: (-abs(expansion.entries[n]), n))
        return cls(tuple(order))

    def top(self, s):
        return self.ranking[: min(s, len(self.ranking))]


def right_distance(j, profile, s, exclude_self=False):
    """Half the gap from degree ``j`` rightward to the nearest same-parity
    member of the top-``s`` support; ``inf`` when no such member exists.

    With ``exclude_self`` the zero distance (``j`` itself in the support) is
    skipped, giving the strictly positive variant.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    best = math.inf
    for n in profile.top(s):
        if n < j or (n - j) % 2 != 0:
            continue
        dist = (n - j) // 2
        if exclude_self and dist == 0:
            continue
        best = min(best, dist)
    return best


def row_decay_bound(x):
    """Proven bound on ``|inv[n, n+2x]| / |inv[n, n]|`` for offset ``x >= 1``."""
    if x == 1:
        return 0.5
    if x == 2:
        return 0.125
    if x < 1:
        raise ValueError("offset must be >= 1")
    return _ROW_DECAY_C / (x * math.sqrt(x - 2.0))


def column_decay_bound(x, r):
    """Proven bound on ``|inv[n-2x, n]| / |inv[n, n]|`` for offset ``x >= 1``."""
    if x == 1:
        return 0.5 * r * r
    if x == 2:
        return 0.25 * r**4
    if x < 1:
        raise ValueError("offset must be >= 1")
    return _COL_DECAY_C * r ** (2 * x) / (x * math.sqrt(x - 2.0))
