"""Compiled evaluation kernels for Legendre/Chebyshev series.

The three-term recurrences are latency-bound when marched one point at a
time, so every kernel sweeps the degree once while updating a block of
points; the independent chains inside a block pipeline well and blocks are
distributed across threads.
"""

import numpy as np

try:
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap

    prange = range

_BLOCK = 128

# recurrence coefficients (2m+1)/(m+1) and m/(m+1), grown on demand
_COEF_A = np.empty(0)
_COEF_B = np.empty(0)


def _recurrence_coeffs(n_max):
    global _COEF_A, _COEF_B
    if _COEF_A.shape[0] < n_max + 1:
        m = np.arange(max(n_max + 1, 1024), dtype=np.float64)
        _COEF_A = (2.0 * m + 1.0) / (m + 1.0)
        _COEF_B = m / (m + 1.0)
    return _COEF_A, _COEF_B


@njit(parallel=True, cache=True)
def _legendre_series_cplx(degrees, coeffs, a, b, z, out):
    npts = z.shape[0]
    nmax = degrees[-1]
    nterms = degrees.shape[0]
    nblocks = (npts + _BLOCK - 1) // _BLOCK
    for blk in prange(nblocks):
        lo = blk * _BLOCK
        hi = min(lo + _BLOCK, npts)
        k = hi - lo
        acc = np.zeros(k, dtype=np.complex128)
        lm1 = np.ones(k, dtype=np.complex128)
        lm = np.empty(k, dtype=np.complex128)
        zz = z[lo:hi]
        idx = 0
        if degrees[0] == 0:
            for t in range(k):
                acc[t] += coeffs[0]
            idx = 1
        if nmax >= 1:
            for t in range(k):
                lm[t] = zz[t]
            if idx < nterms and degrees[idx] == 1:
                c = coeffs[idx]
                for t in range(k):
                    acc[t] += c * lm[t]
                idx += 1
            for m in range(1, nmax):
                am = a[m]
                bm = b[m]
                for t in range(k):
                    lp = am * (zz[t] * lm[t]) - bm * lm1[t]
                    lm1[t] = lm[t]
                    lm[t] = lp
                if idx < nterms and degrees[idx] == m + 1:
                    c = coeffs[idx]
                    for t in range(k):
                        acc[t] += c * lm[t]
                    idx += 1
        out[lo:hi] = acc


@njit(parallel=True, cache=True)
def _legendre_series_real(degrees, coeffs, a, b, x, out):
    npts = x.shape[0]
    nmax = degrees[-1]
    nterms = degrees.shape[0]
    nblocks = (npts + _BLOCK - 1) // _BLOCK
    for blk in prange(nblocks):
        lo = blk * _BLOCK
        hi = min(lo + _BLOCK, npts)
        k = hi - lo
        acc = np.zeros(k, dtype=np.float64)
        lm1 = np.ones(k, dtype=np.float64)
        lm = np.empty(k, dtype=np.float64)
        xx = x[lo:hi]
        idx = 0
        if degrees[0] == 0:
            for t in range(k):
                acc[t] += coeffs[0]
            idx = 1
        if nmax >= 1:
            for t in range(k):
                lm[t] = xx[t]
            if idx < nterms and degrees[idx] == 1:
                c = coeffs[idx]
                for t in range(k):
                    acc[t] += c * lm[t]
                idx += 1
            for m in range(1, nmax):
                am = a[m]
                bm = b[m]
                for t in range(k):
                    lp = am * (xx[t] * lm[t]) - bm * lm1[t]
                    lm1[t] = lm[t]
                    lm[t] = lp
                if idx < nterms and degrees[idx] == m + 1:
                    c = coeffs[idx]
                    for t in range(k):
                        acc[t] += c * lm[t]
                    idx += 1
        out[lo:hi] = acc


@njit(parallel=True, cache=True)
def _chebyshev_series_cplx(degrees, coeffs, z, out):
    npts = z.shape[0]
    nmax = degrees[-1]
    nterms = degrees.shape[0]
    nblocks = (npts + _BLOCK - 1) // _BLOCK
    for blk in prange(nblocks):
        lo = blk * _BLOCK
        hi = min(lo + _BLOCK, npts)
        k = hi - lo
        acc = np.zeros(k, dtype=np.complex128)
        tm1 = np.ones(k, dtype=np.complex128)
        tm = np.empty(k, dtype=np.complex128)
        zz = z[lo:hi]
        idx = 0
        if degrees[0] == 0:
            for t in range(k):
                acc[t] += coeffs[0]
            idx = 1
        if nmax >= 1:
            for t in range(k):
                tm[t] = zz[t]
            if idx < nterms and degrees[idx] == 1:
                c = coeffs[idx]
                for t in range(k):
                    acc[t] += c * tm[t]
                idx += 1
            for m in range(1, nmax):
                for t in range(k):
                    tp = 2.0 * (zz[t] * tm[t]) - tm1[t]
                    tm1[t] = tm[t]
                    tm[t] = tp
                if idx < nterms and degrees[idx] == m + 1:
                    c = coeffs[idx]
                    for t in range(k):
                        acc[t] += c * tm[t]
                    idx += 1
        out[lo:hi] = acc


@njit(parallel=True, cache=True)
def _chebyshev_series_real(degrees, coeffs, x, out):
    npts = x.shape[0]
    nmax = degrees[-1]
    nterms = degrees.shape[0]
    nblocks = (npts + _BLOCK - 1) // _BLOCK
    for blk in prange(nblocks):
        lo = blk * _BLOCK
        hi = min(lo + _BLOCK, npts)
        k = hi - lo
        acc = np.zeros(k, dtype=np.float64)
        tm1 = np.ones(k, dtype=np.float64)
        tm = np.empty(k, dtype=np.float64)
        xx = x[lo:hi]
        idx = 0
        if degrees[0] == 0:
            for t in range(k):
                acc[t] += coeffs[0]
            idx = 1
        if nmax >= 1:
            for t in range(k):
                tm[t] = xx[t]
            if idx < nterms and degrees[idx] == 1:
                c = coeffs[idx]
                for t in range(k):
                    acc[t] += c * tm[t]
                idx += 1
            for m in range(1, nmax):
                for t in range(k):
                    tp = 2.0 * (xx[t] * tm[t]) - tm1[t]
                    tm1[t] = tm[t]
                    tm[t] = tp
                if idx < nterms and degrees[idx] == m + 1:
                    c = coeffs[idx]
                    for t in range(k):
                        acc[t] += c * tm[t]
                    idx += 1
        out[lo:hi] = acc


@njit(parallel=True, cache=True)
def _legendre_columns(degrees, a, b, x, out):
    # out[p, k] = L_{degrees[k]}(x[p]); one sweep per point block
    npts = x.shape[0]
    nmax = degrees[-1]
    nterms = degrees.shape[0]
    nblocks = (npts + _BLOCK - 1) // _BLOCK
    for blk in prange(nblocks):
        lo = blk * _BLOCK
        hi = min(lo + _BLOCK, npts)
        k = hi - lo
        lm1 = np.ones(k, dtype=np.float64)
        lm = np.empty(k, dtype=np.float64)
        xx = x[lo:hi]
        idx = 0
        if degrees[0] == 0:
            for t in range(k):
                out[lo + t, 0] = 1.0
            idx = 1
        if nmax >= 1:
            for t in range(k):
                lm[t] = xx[t]
            if idx < nterms and degrees[idx] == 1:
                for t in range(k):
                    out[lo + t, idx] = lm[t]
                idx += 1
            for m in range(1, nmax):
                am = a[m]
                bm = b[m]
                for t in range(k):
                    lp = am * (xx[t] * lm[t]) - bm * lm1[t]
                    lm1[t] = lm[t]
                    lm[t] = lp
                if idx < nterms and degrees[idx] == m + 1:
                    for t in range(k):
                        out[lo + t, idx] = lm[t]
                    idx += 1


def _as_sorted_terms(degrees, coeffs):
    degrees = np.asarray(degrees, dtype=np.int64)
    order = np.argsort(degrees, kind="stable")
    return np.ascontiguousarray(degrees[order]), order


def legendre_series(degrees, coeffs, pts):
    """Evaluate sum_k coeffs[k] * L_{degrees[k]}(pts) for a 1-d point array."""
    pts = np.asarray(pts)
    if len(degrees) == 0:
        return np.zeros(pts.shape, dtype=pts.dtype if np.iscomplexobj(pts) else np.float64)
    degs, order = _as_sorted_terms(degrees, coeffs)
    cfs = np.ascontiguousarray(np.asarray(coeffs, dtype=np.float64)[order])
    a, b = _recurrence_coeffs(int(degs[-1]))
    if np.iscomplexobj(pts):
        z = np.ascontiguousarray(pts, dtype=np.complex128)
        out = np.empty(z.shape[0], dtype=np.complex128)
        _legendre_series_cplx(degs, cfs, a, b, z, out)
    else:
        x = np.ascontiguousarray(pts, dtype=np.float64)
        out = np.empty(x.shape[0], dtype=np.float64)
        _legendre_series_real(degs, cfs, a, b, x, out)
    return out


def chebyshev_series(degrees, coeffs, pts):
    """Evaluate sum_k coeffs[k] * T_{degrees[k]}(pts) for a 1-d point array."""
    pts = np.asarray(pts)
    if len(degrees) == 0:
        return np.zeros(pts.shape, dtype=pts.dtype if np.iscomplexobj(pts) else np.float64)
    degs, order = _as_sorted_terms(degrees, coeffs)
    cfs = np.ascontiguousarray(np.asarray(coeffs, dtype=np.float64)[order])
    if np.iscomplexobj(pts):
        z = np.ascontiguousarray(pts, dtype=np.complex128)
        out = np.empty(z.shape[0], dtype=np.complex128)
        _chebyshev_series_cplx(degs, cfs, z, out)
    else:
        x = np.ascontiguousarray(pts, dtype=np.float64)
        out = np.empty(x.shape[0], dtype=np.float64)
        _chebyshev_series_real(degs, cfs, x, out)
    return out


def legendre_columns(x, degrees):
    """Matrix [L_n(x_p)]_{p,n} for the requested degrees, one recurrence sweep."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    degs = np.asarray(sorted(degrees), dtype=np.int64)
    out = np.empty((x.shape[0], degs.shape[0]), dtype=np.float64)
    if degs.shape[0] == 0:
        return out
    a, b = _recurrence_coeffs(int(degs[-1]))
    _legendre_columns(degs, a, b, x, out)
    return out


if not HAVE_NUMBA:  # pragma: no cover - plain-numpy fallback
    def _fallback_series(degrees, coeffs, pts, cheb):
        pts = np.asarray(pts)
        nmax = int(max(degrees))
        lookup = dict(zip([int(d) for d in degrees], coeffs))
        acc = np.zeros(pts.shape, dtype=np.complex128 if np.iscomplexobj(pts) else np.float64)
        pm1 = np.ones_like(acc)
        if 0 in lookup:
            acc = acc + lookup[0] * pm1
        if nmax == 0:
            return acc
        pm = pts.astype(acc.dtype)
        if 1 in lookup:
            acc = acc + lookup[1] * pm
        for m in range(1, nmax):
            if cheb:
                pp = 2.0 * pts * pm - pm1
            else:
                pp = ((2 * m + 1) * pts * pm - m * pm1) / (m + 1)
            pm1, pm = pm, pp
            if m + 1 in lookup:
                acc = acc + lookup[m + 1] * pp
        return acc

    def legendre_series(degrees, coeffs, pts):  # noqa: F811
        if len(degrees) == 0:
            return np.zeros(np.asarray(pts).shape)
        return _fallback_series(degrees, coeffs, pts, cheb=False)

    def chebyshev_series(degrees, coeffs, pts):  # noqa: F811
        if len(degrees) == 0:
            return np.zeros(np.asarray(pts).shape)
        return _fallback_series(degrees, coeffs, pts, cheb=True)

    def legendre_columns(x, degrees):  # noqa: F811
        x = np.asarray(x, dtype=np.float64)
        degs = sorted(int(d) for d in degrees)
        out = np.empty((x.shape[0], len(degs)))
        for k, n in enumerate(degs):
            e = np.zeros(n + 1)
            e[n] = 1.0
            out[:, k] = _fallback_series(np.arange(n + 1), e, x, cheb=False)
        return out
