"""Hot kernels with an optional numba backend.

Set ``GASPT_RH_NUMBA=0`` to force the pure numpy path. The flag is read once
at import; ``use_numba(False)`` switches at runtime (benchmarks and tests).
"""
import os

import numpy as np

try:
    import numba
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

_ENABLED = _HAVE_NUMBA and os.environ.get("GASPT_RH_NUMBA", "1").lower() not in ("0", "false", "no", "off")

_CHUNK = 4096


def numba_available():
    return _HAVE_NUMBA


def numba_enabled():
    return _ENABLED


def use_numba(flag):
    """Enable or disable the compiled kernels; returns the previous setting."""
    global _ENABLED
    prev = _ENABLED
    _ENABLED = bool(flag) and _HAVE_NUMBA
    return prev


def _trig_poly_eval_numpy(coeffs, nmin, theta, k):
    # coeffs[q, j] multiplies k**q * exp(i*(nmin+j)*theta)
    nq, nc = coeffs.shape
    out = np.empty(theta.shape[0], dtype=np.complex128)
    n = nmin + np.arange(nc)
    for s in range(0, theta.shape[0], _CHUNK):
        th = theta[s:s + _CHUNK]
        kk = k[s:s + _CHUNK]
        basis = np.exp(1j * np.multiply.outer(th, n))
        vals = basis @ coeffs.T
        acc = vals[:, nq - 1]
        for q in range(nq - 2, -1, -1):
            acc = acc * kk + vals[:, q]
        out[s:s + _CHUNK] = acc
    return out


if _HAVE_NUMBA:
    @numba.njit(cache=True, fastmath=False)
    def _trig_poly_eval_numba(coeffs, nmin, theta, k):
        nq, nc = coeffs.shape
        m = theta.shape[0]
        out = np.empty(m, dtype=np.complex128)
        vals = np.empty(nq, dtype=np.complex128)
        for i in range(m):
            e1 = np.exp(1j * theta[i])
            e = np.exp(1j * nmin * theta[i])
            for q in range(nq):
                vals[q] = 0.0
            for j in range(nc):
                for q in range(nq):
                    vals[q] += coeffs[q, j] * e
                e *= e1
            acc = vals[nq - 1]
            for q in range(nq - 2, -1, -1):
                acc = acc * k[i] + vals[q]
            out[i] = acc
        return out


def trig_poly_eval(coeffs, nmin, theta, k=None):
    """Evaluate sum_q k**q * sum_j coeffs[q, j] * exp(i (nmin + j) theta) pointwise.

    ``theta`` and ``k`` are 1-D arrays of equal length (``k`` may be omitted
    when there is a single row of coefficients).
    """
    coeffs = np.ascontiguousarray(np.atleast_2d(coeffs), dtype=np.complex128)
    theta = np.ascontiguousarray(np.atleast_1d(theta), dtype=np.float64)
    if k is None:
        k = np.zeros(theta.shape[0], dtype=np.complex128)
    k = np.ascontiguousarray(np.broadcast_to(k, theta.shape), dtype=np.complex128)
    if _ENABLED:
        return _trig_poly_eval_numba(coeffs, int(nmin), theta, k)
    return _trig_poly_eval_numpy(coeffs, int(nmin), theta, k)
