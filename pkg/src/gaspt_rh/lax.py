"""Closed forms W, the second form, the kernel w, and the square root lambda.

On C_a the forms are evaluated per unit arclength: with z = a + e^{i theta},
u_z dz = (u_t + i u_n)/2 ds, and W reduces to

    [(k - z)(k + zbar)]^{alpha/2 - 1} ((k - i y) u_t + i x u_n) ds.

For odd alpha the half-integer power is lambda^{alpha - 2}, with lambda a
determination of sqrt((k - z)(k + zbar)); lambda is the only source of
branch choices.
"""
from dataclasses import dataclass

import numpy as np

from . import _accel
from .boundary import TrigSeries, e_series

CUT_TOL = 1e-10


@dataclass(frozen=True)
class SqrtBranch:
    sheet: int  # 1 or 2
    sign: int  # +1 or -1 relative to lambda_ref

    def __post_init__(self):
        if self.sheet not in (1, 2) or self.sign not in (1, -1):
            raise ValueError("invalid branch")


def on_cut(zp, k, tol=CUT_TOL):
    """True where k lies on the segment (-conj z', z') up to ``tol``."""
    s = k - 1j * np.imag(zp)
    return (np.abs(s.imag) <= tol) & (np.abs(s.real) < np.real(zp) - tol)


def lambda_ref(zp, k, check=True, diff=None):
    """sqrt((k - z')(k + conj z')) with cut on the segment (-conj z', z') and lambda ~ k at infinity.

    ``diff`` may carry k - z' computed without cancellation (k close to z').
    """
    zp = np.asarray(zp, dtype=complex)
    k = np.asarray(k, dtype=complex)
    if check and np.any(on_cut(zp, k)):
        raise ValueError("k lies on the branch cut; use lambda_limit")
    s = k - 1j * zp.imag
    with np.errstate(divide="ignore", invalid="ignore"):
        if diff is None:
            out = s * np.sqrt(1.0 - (zp.real / s) ** 2)
        else:
            out = s * np.sqrt(diff * (s + zp.real) / (s * s))
    return out


def arc_diff(theta_k, theta_p):
    """e^{i theta_k} - e^{i theta_p} without cancellation."""
    return 2j * np.sin(0.5 * (theta_k - theta_p)) * np.exp(0.5j * (theta_k + theta_p))


def lambda_limit(zp, k, side):
    """One-sided limit of lambda_ref for k on the cut; side=+1 from above, -1 from below."""
    zp = np.asarray(zp, dtype=complex)
    k = np.asarray(k, dtype=complex)
    s = (k - 1j * zp.imag).real
    return side * 1j * np.sqrt(np.maximum(zp.real ** 2 - s * s, 0.0))


def cut_crossings(theta0, theta, k, a, include_start=False, tol=CUT_TOL):
    """Number of times the moving cut (-conj z', z'), z' = a + e^{i t}, sweeps across k
    while t runs from theta0 to theta (either direction).

    The cut passes k when sin t = Im k and |Re k| < a + cos t.
    """
    theta = np.asarray(theta, dtype=float)
    k = np.asarray(k, dtype=complex)
    theta, k = np.broadcast_arrays(theta, k)
    lo = np.minimum(theta0, theta)
    hi = np.maximum(theta0, theta)
    yk = k.imag
    inside = np.abs(yk) < 1.0
    b1 = np.arcsin(np.clip(yk, -1.0, 1.0))
    count = np.zeros(theta.shape, dtype=int)
    for b in (b1, np.pi - b1):
        for j in range(-2, 3):
            t = b + 2 * np.pi * j
            if include_start:
                between = (np.abs(t - theta0) <= tol) | ((t - lo > tol) & (hi - t > tol))
            else:
                between = (t - lo > tol) & (hi - t > tol)
            hit = inside & between & (np.abs(k.real) < a + np.cos(t) - tol)
            count += hit
    return count


def lambda_track(thetas, k, a, start=SqrtBranch(1, 1), include_start=False):
    """Signs of the continuous determination along the arc z' = a + e^{i theta}.

    Returns an array of +1/-1 relative to lambda_ref(z', k) at each theta,
    starting from ``start.sign`` at thetas[0].
    """
    thetas = np.asarray(thetas, dtype=float)
    flips = cut_crossings(thetas[0], thetas, k, a, include_start=include_start)
    return start.sign * (1 - 2 * (flips % 2))


def _power(k, zp, expo2, lam):
    """[(k - z')(k + conj z')]^{expo2/2}; needs lam for odd expo2."""
    if expo2 % 2 == 0:
        return ((k - zp) * (k + np.conj(zp))) ** (expo2 // 2)
    if lam is None:
        raise ValueError("a determination of lambda is required for half-integer powers")
    return lam ** expo2


def W_eval(theta, k, alpha, ut, un, a, lam=None):
    """W per unit arclength at z' = a + e^{i theta} with boundary values ut, un."""
    theta = np.asarray(theta, dtype=float)
    zp = a + np.exp(1j * theta)
    x, y = zp.real, zp.imag
    return _power(k, zp, alpha - 2, lam) * ((k - 1j * y) * ut + 1j * x * un)


def W_segment(zp, dzp, k, alpha, uz, uzbar, lam=None):
    """W contracted with a velocity dz' at an arbitrary point (complex derivatives supplied)."""
    zp = np.asarray(zp, dtype=complex)
    return _power(k, zp, alpha - 2, lam) * ((k + np.conj(zp)) * uz * dzp + (k - zp) * uzbar * np.conj(dzp))


def W2_eval(zp, dzp, k, alpha, u, uz, uzbar, lam=None):
    """Second closed form, contracted with dz'."""
    zp = np.asarray(zp, dtype=complex)
    x = zp.real
    c = alpha - 1
    return _power(k, zp, -alpha, lam) * x ** (alpha - 2) * (
        (k + np.conj(zp)) * (2 * x * uz + c * u) * dzp + (k - zp) * (2 * x * uzbar + c * u) * np.conj(dzp))


def w_kernel(theta, k, m, parity, ut, un, a):
    """(k + conj z')^{-p} ((k - i y) u_t + i x u_n) / tau with p = m + 1 (even) or m + 1/2 (odd).

    The odd case uses the principal square root of k + conj z'.
    """
    theta = np.asarray(theta, dtype=float)
    zp = a + np.exp(1j * theta)
    tau = 1j * np.exp(1j * theta)
    p = m + 1 if parity == "even" else m + 0.5
    return (k + np.conj(zp)) ** (-p) * ((k - 1j * zp.imag) * ut + 1j * zp.real * un) / tau


class KPoly:
    """Polynomial in k with trigonometric coefficients: sum_q k^q s_q(theta)."""

    def __init__(self, parts):
        N = max(p.N for p in parts)
        self.parts = [p.pad(N) for p in parts]
        self.N = N
        self._mat = np.array([p.coeffs for p in self.parts])

    def __call__(self, theta, k):
        theta = np.asarray(theta, dtype=float)
        k = np.broadcast_to(np.asarray(k, dtype=complex), theta.shape)
        out = _accel.trig_poly_eval(self._mat, -self.N, theta.ravel(), k.ravel())
        return out.reshape(theta.shape)

    def deriv_k(self, order=1):
        parts = list(self.parts)
        for _ in range(order):
            if len(parts) == 1:
                return KPoly([TrigSeries.zeros(0)])
            parts = [parts[q] * q for q in range(1, len(parts))]
        return KPoly(parts)


def tangential_derivatives(ut, un, a, p0, jmax):
    """F_0..F_jmax with (tau^{-1} d/dtheta)^j w = (k + conj z')^{-p0-j} F_j(theta; k).

    F_0 = ((k - i y) u_t + i x u_n) tau^{-1}; the recursion is
    F_{j+1} = (p0 + j) e^{-2i theta} F_j + (k + a + e^{-i theta}) tau^{-1} dF_j/dtheta.
    Exact for band-limited data.
    """
    tau_inv = e_series(-1) * (-1j)
    y = (e_series(1) - e_series(-1)) * (-0.5j)
    x = (e_series(1) + e_series(-1)) * 0.5 + a
    const_part = (y * ut * (-1j) + x * un * 1j) * tau_inv
    lin_part = ut * tau_inv
    F = [const_part, lin_part]
    out = [KPoly(F)]
    e2 = e_series(-2)
    em1 = e_series(-1)
    for j in range(jmax):
        p = p0 + j
        new = [TrigSeries.zeros(0) for _ in range(len(F) + 1)]
        for q, c in enumerate(F):
            dc = TrigSeries(c.coeffs * 1j * c.n) * tau_inv
            new[q] = new[q] + c * e2 * p + dc * a + dc * em1
            new[q + 1] = new[q + 1] + dc
        F = new
        out.append(KPoly(F))
    return out
