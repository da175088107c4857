"""Representation of solutions for even coefficient alpha = -2m.

u(z) = -(1/pi) Im int_{(z, z_r)} ((k - z)(k + zbar))^m J(k) dk + 2 Re a_r + u(z_r)

with J(k) = -oint_{C_a} W(., k) and a_r the residue at z_r of the
normalized phi, read off from the integrated-by-parts expansion.
"""
from dataclasses import dataclass
from math import comb, factorial, gamma

import numpy as np

from .geometry import chord_endpoints, theta_r
from .lax import tangential_derivatives
from .quad import gauss_legendre


def c_coeffs(m):
    """c_j = (-1)^j Gamma(m - j) / Gamma(m + 1), j = 0..m-1."""
    return np.array([(-1) ** j * gamma(m - j) / gamma(m + 1) for j in range(m)])


@dataclass
class JumpTable:
    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray  # normalized jump ((k - z)(k + zbar))^m J


@dataclass
class PolarPart:
    coeffs: np.ndarray  # coeffs[d] multiplies (k - z_r)^{-d}, d = 1..m (index 0 unused)
    a_r: complex


def _check_m(data, m):
    if data.alpha != -2 * m:
        raise ValueError(f"data carry alpha={data.alpha}, expected {-2 * m}")
    if data.un is None:
        raise ValueError("u_n is required")


def _g_samples(k, data, m, M):
    th = 2 * np.pi * np.arange(M) / M
    e = np.exp(1j * th)
    x = data.a + e.real
    y = e.imag
    ut = data.ut.samples(M).real
    un = data.un.samples(M).real
    k = np.asarray(k, dtype=complex)[..., None]
    return (k + data.a + np.conj(e)) ** (-m - 1) * ((k - 1j * y) * ut + 1j * x * un) / (1j * e)


def jump_even(k, data, m, n_circle=256):
    """J(k) = -oint W(., k) for k inside D_a.

    The kernel is split as (k - z')^{-m-1} w(z', k); w's Fourier modes
    w_n give oint = 2 pi i (-1)^{m+1} sum_{n>=m} C(n, m) w_n (k - a)^{n-m}
    by residues, which is spectrally accurate for k up to the circle.
    """
    _check_m(data, m)
    k = np.asarray(k, dtype=complex)
    if np.any(np.abs(k - data.a) > 1.0 + 1e-12):
        raise ValueError("k must lie in the closed disk")
    M = int(n_circle)
    if M <= 2 * (data.N + 2):
        raise ValueError(f"n_circle={M} does not resolve order-{data.N} data")
    G = np.fft.fft(_g_samples(k, data, m, M), axis=-1) / M
    n = np.arange(m, M // 2)
    binom = np.array([comb(int(j), m) for j in n], dtype=float)
    kap = (k - data.a)[..., None]
    s = np.sum(binom * G[..., m:M // 2] * kap ** (n - m), axis=-1)
    return -2j * np.pi * (-1) ** (m + 1) * s


def jump_even_trapezoid(k, data, m, n_circle=256):
    """Direct periodic-trapezoid value of -oint W; reference for k away from C_a."""
    _check_m(data, m)
    M = int(n_circle)
    th = 2 * np.pi * np.arange(M) / M
    z = data.a + np.exp(1j * th)
    ut = data.ut.samples(M).real
    un = data.un.samples(M).real
    k = np.asarray(k, dtype=complex)[..., None]
    W = ((k - z) * (k + np.conj(z))) ** (-m - 1) * ((k - 1j * z.imag) * ut + 1j * z.real * un)
    return -np.sum(W, axis=-1) * 2 * np.pi / M


def jump_table(z, data, m, n_circle=256, n_chord=64):
    zl, zr = chord_endpoints(z, data.dom)
    g = gauss_legendre(n_chord)
    ks = z + (zr - z) * 0.5 * (g.nodes + 1.0)
    w = g.weights * 0.5 * (zr - z)
    J = jump_even(ks, data, m, n_circle)
    return JumpTable(ks, w, ((ks - z) * (ks + np.conj(z))) ** m * J)


def _laurent_at_zr(z, data, m):
    """Coefficients P_d of (k - z_r)^{-d}, d = 1..m, in the polar part of phi at z_r."""
    tr = theta_r(z, data.dom)
    zr = data.a + np.exp(1j * tr)
    zbr = np.conj(zr)
    F = tangential_derivatives(data.ut, data.un, data.a, m + 1, max(m - 1, 0))
    c = c_coeffs(m)
    P = np.zeros(m + 1, dtype=complex)
    for j in range(m):
        q = m + 1 + j
        for i in range(m - j):
            # d^i/dk^i [(k + zbar')^{-q} F_j(theta; k)] at k = z_r, theta = theta_r
            val = 0j
            for s in range(i + 1):
                fall = np.prod([-q - t for t in range(s)]) if s else 1.0
                Fd = F[j].deriv_k(i - s)(np.array([tr]), np.array([zr]))[0]
                val += comb(i, s) * fall * (zr + zbr) ** (-q - s) * Fd
            P[m - j - i] += -c[j] * val / factorial(i)
    return P


def polar_residue(z, data, m):
    """Polar part of phi at z_r and the residue a_r of ((k - z)(k + zbar))^m phi there."""
    _check_m(data, m)
    if m == 0:
        return PolarPart(np.zeros(1, dtype=complex), 0j)
    z = complex(z)
    zl, zr = chord_endpoints(z, data.dom)
    P = _laurent_at_zr(z, data, m)
    poly = np.poly1d([1.0, -z]) * np.poly1d([1.0, np.conj(z)])
    poly = poly ** m
    taylor = [poly.deriv(s)(zr) / factorial(s) if s else poly(zr) for s in range(m)]
    a_r = sum(taylor[d - 1] * P[d] for d in range(1, m + 1))
    return PolarPart(P, complex(a_r))


def solve_even(z, data, m, n_circle=256, n_chord=64, include_residue=True):
    """u(z) for alpha = -2m from u_t, u_n and the trace value at z_r."""
    _check_m(data, m)
    z = complex(z)
    data.dom.check_interior(z)
    tab = jump_table(z, data, m, n_circle, n_chord)
    tr = theta_r(z, data.dom)
    val = -np.imag(np.sum(tab.values * tab.weights)) / np.pi + data.u_at(tr)
    if include_residue and m > 0:
        val += 2.0 * polar_residue(z, data, m).a_r.real
    return float(val)


def solve_even_grid(points, data, m, **kw):
    return np.array([solve_even(z, data, m, **kw) for z in np.ravel(points)]).reshape(np.shape(points))

