"""Hot loops for Gegenbauer evaluation.

Every kernel exists twice: an explicit-loop version compiled with numba and a
vectorised pure-numpy version. The numba path is used when numba imports and
``DIMWALK_DISABLE_NUMBA`` is unset (or ``0``/``false``); otherwise numpy.
``use_backend`` switches at runtime, which the benchmark and the
cross-backend tests rely on.
"""
from __future__ import annotations

import contextlib
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _env_disables_numba() -> bool:
    flag = os.environ.get("DIMWALK_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false", "no")


HAVE_NUMBA = numba is not None
_backend = "numba" if HAVE_NUMBA and not _env_disables_numba() else "numpy"


def backend() -> str:
    return _backend


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily force ``"numba"`` or ``"numpy"``."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    previous = _backend
    _backend = name
    try:
        yield
    finally:
        _backend = previous


# ---------------------------------------------------------------------------
# recurrence coefficients, shared by both backends
# ---------------------------------------------------------------------------

def recurrence(lam: float, nmax: int):
    """Coefficients of ``C_n = (ra[n] x C_{n-1} - rb[n] C_{n-2})`` and ``1/C_n(1)``.

    The recurrence runs on the unnormalised ``C^lam_n`` (``C_0 = 1``,
    ``C_1 = 2 lam x``); ``inv_norm[n] = 1/C^lam_n(1)`` comes from the product
    ``C_n(1) = C_{n-1}(1) (n + 2 lam - 1)/n``. At ``lam = 0`` the Chebyshev
    recurrence is used instead (``C_1 = x``, ``ra = 2``, ``rb = 1``, no scaling).
    Returns ``(ra, rb, inv_norm, c1)`` with ``c1`` the factor in ``C_1 = c1 x``.
    """
    size = max(nmax + 1, 2)
    n = np.arange(size, dtype=np.float64)
    ra = np.zeros(size)
    rb = np.zeros(size)
    inv_norm = np.ones(size)
    if lam == 0.0:
        ra[2:] = 2.0
        rb[2:] = 1.0
        return ra, rb, inv_norm, 1.0
    ra[2:] = 2.0 * (n[2:] + lam - 1.0) / n[2:]
    rb[2:] = (n[2:] + 2.0 * lam - 2.0) / n[2:]
    norm = np.ones(size)
    norm[1:] = np.cumprod((n[1:] + 2.0 * lam - 1.0) / n[1:])
    inv_norm = 1.0 / norm
    return ra, rb, inv_norm, 2.0 * lam


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _table_np(nmax, x, ra, rb, inv_norm, c1f):
    out = np.empty((nmax + 1, x.size))
    if nmax < 0:
        return out
    out[0] = 1.0
    if nmax == 0:
        return out
    c2 = np.ones_like(x)
    c1 = c1f * x
    out[1] = c1 * inv_norm[1]
    for n in range(2, nmax + 1):
        c = ra[n] * x * c1 - rb[n] * c2
        out[n] = c * inv_norm[n]
        c2, c1 = c1, c
    return out


def _weighted_sum_np(A, x, ra, rb, inv_norm, c1f):
    # sum_n A[n, p] * W_n(x_p); A has one row per degree
    nterms = A.shape[0]
    if nterms == 0:
        return np.zeros(x.size)
    return np.einsum("np,np->p", A, _table_np(nterms - 1, x, ra, rb, inv_norm, c1f))


def _series_np(coeffs, x, ra, rb, inv_norm, c1f):
    if coeffs.size == 0:
        return np.zeros(x.size)
    return coeffs @ _table_np(coeffs.size - 1, x, ra, rb, inv_norm, c1f)


# ---------------------------------------------------------------------------
# loop implementations (compiled by numba when present); degree in the outer
# loop so every inner loop streams over contiguous points
# ---------------------------------------------------------------------------

def _table_loop(nmax, x, ra, rb, inv_norm, c1f):
    npts = x.size
    out = np.empty((nmax + 1, npts))
    if nmax < 0:
        return out
    for p in range(npts):
        out[0, p] = 1.0
    if nmax == 0:
        return out
    c2 = np.ones(npts)
    c1 = np.empty(npts)
    for p in range(npts):
        c1[p] = c1f * x[p]
        out[1, p] = c1[p] * inv_norm[1]
    for n in range(2, nmax + 1):
        a = ra[n]
        b = rb[n]
        s = inv_norm[n]
        for p in range(npts):
            c = a * x[p] * c1[p] - b * c2[p]
            c2[p] = c1[p]
            c1[p] = c
            out[n, p] = c * s
    return out


def _weighted_sum_loop(A, x, ra, rb, inv_norm, c1f):
    nterms = A.shape[0]
    npts = x.size
    out = np.zeros(npts)
    if nterms == 0:
        return out
    for p in range(npts):
        out[p] = A[0, p]
    if nterms == 1:
        return out
    c2 = np.ones(npts)
    c1 = np.empty(npts)
    for p in range(npts):
        c1[p] = c1f * x[p]
        out[p] += A[1, p] * c1[p] * inv_norm[1]
    for n in range(2, nterms):
        a = ra[n]
        b = rb[n]
        s = inv_norm[n]
        for p in range(npts):
            c = a * x[p] * c1[p] - b * c2[p]
            c2[p] = c1[p]
            c1[p] = c
            out[p] += A[n, p] * c * s
    return out


def _series_loop(coeffs, x, ra, rb, inv_norm, c1f):
    nterms = coeffs.size
    npts = x.size
    out = np.zeros(npts)
    if nterms == 0:
        return out
    for p in range(npts):
        out[p] = coeffs[0]
    if nterms == 1:
        return out
    c2 = np.ones(npts)
    c1 = np.empty(npts)
    w = coeffs[1] * inv_norm[1]
    for p in range(npts):
        c1[p] = c1f * x[p]
        out[p] += w * c1[p]
    for n in range(2, nterms):
        a = ra[n]
        b = rb[n]
        w = coeffs[n] * inv_norm[n]
        for p in range(npts):
            c = a * x[p] * c1[p] - b * c2[p]
            c2[p] = c1[p]
            c1[p] = c
            out[p] += w * c
    return out


if HAVE_NUMBA:
    _table_nb = numba.njit(cache=True)(_table_loop)
    _weighted_sum_nb = numba.njit(cache=True)(_weighted_sum_loop)
    _series_nb = numba.njit(cache=True)(_series_loop)
else:  # pragma: no cover
    _table_nb = _weighted_sum_nb = _series_nb = None


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _flat(x):
    return np.ascontiguousarray(x, dtype=np.float64).ravel()


def gegenbauer_table(lam: float, nmax: int, x) -> np.ndarray:
    """Rows ``W^lam_0(x) .. W^lam_nmax(x)`` for flat ``x``; shape (nmax+1, x.size)."""
    x = _flat(x)
    rec = recurrence(float(lam), int(nmax))
    if _backend == "numba":
        return _table_nb(int(nmax), x, *rec)
    return _table_np(int(nmax), x, *rec)


def series_sum(coeffs, lam: float, x) -> np.ndarray:
    """``sum_n coeffs[n] W^lam_n(x)`` in one pass over the recurrence."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    x = _flat(x)
    rec = recurrence(float(lam), coeffs.size - 1)
    if _backend == "numba":
        return _series_nb(coeffs, x, *rec)
    return _series_np(coeffs, x, *rec)


def weighted_sum(A, lam: float, x) -> np.ndarray:
    """``sum_n A[n, p] W^lam_n(x_p)``; per-point coefficients (spatio-temporal sums)."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    x = _flat(x)
    if A.ndim != 2 or (A.shape[0] and A.shape[1] != x.size):
        raise ValueError("A must have shape (nterms, x.size)")
    rec = recurrence(float(lam), A.shape[0] - 1)
    if _backend == "numba":
        return _weighted_sum_nb(A, x, *rec)
    return _weighted_sum_np(A, x, *rec)
