"""Legendre/Chebyshev evaluation and sparse expansions.

Conventions used throughout the package:

* ``L_n`` is the classical (unnormalized) Legendre polynomial with
  ``L_n(1) = 1``, generated by ``(m+1) L_{m+1} = (2m+1) x L_m - m L_{m-1}``.
* ``T_n`` is the Chebyshev polynomial of the first kind,
  ``T_{m+1} = 2 x T_m - T_{m-1}``.
* A :class:`SparseExpansion` stores only the nonzero coefficients of a
  polynomial ``f(x) = sum_n c_n P_n(x)`` in one of the two bases.

All factorial/Pochhammer ratios are evaluated through log-gamma
differences so that no intermediate factorial overflows, even for index
pairs up to ``10**6``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from . import _kernels

__all__ = [
    "Basis",
    "SparseExpansion",
    "legendre_eval",
    "legendre_row",
    "chebyshev_eval",
    "eval_expansion",
    "log_pochhammer",
    "fourier_to_legendre_weight",
    "log_fourier_to_legendre_weight",
]


class Basis(enum.Enum):
    LEGENDRE = "legendre"
    CHEBYSHEV = "chebyshev"


@dataclass(frozen=True)
class SparseExpansion:
    """Sparse coefficient set ``{degree: coefficient}`` in a named basis.

    Exact zero coefficients are dropped on construction; any epsilon-based
    pruning is left to callers. Instances are treated as immutable and are
    safe to share across threads.

    Parameters
    ----------
    basis : Basis
        Polynomial family of the expansion.
    max_degree : int
        Degree bound ``N``; every stored degree must lie in ``[0, N]``.
    entries : dict
        Map from degree to real coefficient.
    """

    basis: Basis
    max_degree: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        cleaned = {}
        for deg, coef in self.entries.items():
            deg = int(deg)
            coef = float(coef)
            if deg < 0 or deg > self.max_degree:
                raise ValueError(f"degree {deg} outside [0, {self.max_degree}]")
            if coef == 0.0:
                continue
            cleaned[deg] = coef
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def legendre(cls, entries, max_degree=None):
        if max_degree is None:
            max_degree = max(entries) if entries else 0
        return cls(Basis.LEGENDRE, int(max_degree), dict(entries))

    @classmethod
    def chebyshev(cls, entries, max_degree=None):
        if max_degree is None:
            max_degree = max(entries) if entries else 0
        return cls(Basis.CHEBYSHEV, int(max_degree), dict(entries))

    def coefficient(self, degree):
        return self.entries.get(int(degree), 0.0)

    def degrees(self):
        return tuple(sorted(self.entries))

    def arrays(self):
        """Stored degrees and coefficients as aligned numpy arrays."""
        degs = np.array(sorted(self.entries), dtype=np.int64)
        cfs = np.array([self.entries[int(d)] for d in degs], dtype=np.float64)
        return degs, cfs

    def __len__(self):
        return len(self.entries)

    def __call__(self, pts):
        """Evaluate the expansion at scalar or array argument(s)."""
        scalar = np.isscalar(pts) or np.ndim(pts) == 0
        arr = np.atleast_1d(np.asarray(pts))
        degs, cfs = self.arrays()
        if self.basis is Basis.LEGENDRE:
            vals = _kernels.legendre_series(degs, cfs, arr)
        else:
            vals = _kernels.chebyshev_series(degs, cfs, arr)
        return vals[0] if scalar else vals


def eval_expansion(expansion, z):
    """Value of a :class:`SparseExpansion` at ``z`` (real or complex)."""
    return expansion(z)


def legendre_eval(n, z):
    """Legendre polynomial ``L_n(z)`` via the three-term recurrence.

    Accepts real or complex ``z``; shares its arithmetic path with
    :func:`legendre_row`, so ``legendre_row(x, N)[n] == legendre_eval(n, x)``
    bit for bit.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return 1.0 + 0.0 * z
    lm1 = 1.0 + 0.0 * z
    lm = z
    for m in range(1, n):
        lm1, lm = lm, ((2 * m + 1) * z * lm - m * lm1) / (m + 1)
    return lm


def legendre_row(x, n_max):
    """All values ``[L_0(x), ..., L_{n_max}(x)]`` in one O(n_max) sweep."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    row = np.empty(n_max + 1, dtype=complex if np.iscomplexobj(x) else float)
    row[0] = 1.0 + 0.0 * x
    if n_max >= 1:
        row[1] = x
    for m in range(1, n_max):
        row[m + 1] = ((2 * m + 1) * x * row[m] - m * row[m - 1]) / (m + 1)
    return row


def chebyshev_eval(n, x):
    """Chebyshev polynomial ``T_n(x)`` via ``T_{m+1} = 2x T_m - T_{m-1}``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return 1.0 + 0.0 * x
    tm1 = 1.0 + 0.0 * x
    tm = x
    for _ in range(1, n):
        tm1, tm = tm, 2 * x * tm - tm1
    return tm


def log_pochhammer(a, j):
    """log of the rising factorial ``(a)_j = a (a+1) ... (a+j-1)``, a > 0."""
    return gammaln(a + j) - gammaln(a)


def log_fourier_to_legendre_weight(i, j, r):
    """Log of the weight tying Fourier coefficient ``-(i+2j)`` of the
    resampled function to Legendre coefficient ``i`` (see ``resample``).

    Computed entirely in log space::

        w_{i,j} = [4^i (i!)^2 (i+1)_j (1/2)_j] / [(2i)! j! (i+3/2)_j] * r^(i+2j)

    ``i`` and ``j`` may be numpy arrays (broadcast elementwise).
    """
    if r <= 0.0 or r > 1.0:
        raise ValueError("r must lie in (0, 1]")
    i = np.asarray(i, dtype=np.float64)
    j = np.asarray(j, dtype=np.float64)
    if np.any(i < 0) or np.any(j < 0):
        raise ValueError("indices must be nonnegative")
    lg = (
        2.0 * i * math.log(2.0)
        + 2.0 * gammaln(i + 1.0)
        + log_pochhammer(i + 1.0, j)
        + log_pochhammer(0.5, j)
        - gammaln(2.0 * i + 1.0)
        - gammaln(j + 1.0)
        - log_pochhammer(i + 1.5, j)
        + (i + 2.0 * j) * math.log(r)
    )
    return lg


def fourier_to_legendre_weight(i, j, r):
    """The weight ``w_{i,j}``; exp of :func:`log_fourier_to_legendre_weight`."""
    out = np.exp(log_fourier_to_legendre_weight(i, j, r))
    if np.ndim(out) == 0:
        return float(out)
    return out
