"""Representation of solutions for odd coefficient alpha = -2m + 1.

The jump of phi across C_a (one copy per sheet of lambda(z, .)) is

    J(k) = J0(z_r, k) + int_{theta_r}^{theta_k} Wt(theta', k) d theta',

with the inner path running counter-clockwise for sheet 1 (k on the upper
arc from z_r to z_l) and clockwise for sheet 2 (lower arc). The determination
of lambda(z', k) starts at +lambda_ref (sheet 1) or -lambda_ref (sheet 2)
at z_r and flips each time the moving cut (-conj z', z') sweeps across k;
for k on the left half this happens at the partner point k~, which gives
the case table of the jump directly. J depends on z only through z_r,
so one table serves a whole horizontal row of evaluation points.

The representation

    T(z) = -(1/2 pi) Im int_{C_a} ((k - z_r)(k + conj z_r))^m J(k) / lambda(z, k) dk + u(z_r)

equals u(z) for m = 0. For m >= 1 the normalized phi keeps poles at the
branch points z and -zbar whose global polar part tends to a nonzero real
constant at infinity. For m = 1 that constant is (x^2 - x_r^2) u_x(z) / x, and
u_x / x solves the equation with coefficient alpha + 2 = 1 with boundary
data computable from u_t and u_n, so

    u(z) = T(z) + (x^2 - x_r^2) v(z),   v = u_x / x  (m = 0 solve).
"""
from dataclasses import dataclass
from math import gamma

import numpy as np

from .boundary import BoundaryData, deriv_t, fit
from .geometry import chord_endpoints, theta_r
from .lax import arc_diff, cut_crossings, lambda_limit, lambda_ref, on_cut, tangential_derivatives
from .quad import cosine_graded, gauss_legendre

ENDPOINT_TOL = 1e-12
SIDE_TOL = 1e-14  # below this distance to the cut the side is taken from the sheet


def c_coeffs_odd(m):
    """c_j = (-1)^j Gamma(m - 1/2 - j) / Gamma(m + 1/2), j = 0..m-1."""
    return np.array([(-1) ** j * gamma(m - 0.5 - j) / gamma(m + 0.5) for j in range(m)])


def c_last(m):
    """Coefficient of the remainder integral; equals c_{m-1} for m >= 1 and -1 for m = 0."""
    return (-1) ** (m - 1) * gamma(0.5) / gamma(m + 0.5)


@dataclass(frozen=True)
class OddJumpSpec:
    m: int
    k: complex
    sheet: int
    tilde_k: complex

    @classmethod
    def on_circle(cls, a, theta_k, sheet, m):
        k = a + np.exp(1j * theta_k)
        return cls(m, complex(k), sheet, complex(a - np.conj(k - a)))


def _check(data, m):
    if data.alpha != 1 - 2 * m:
        raise ValueError(f"data carry alpha={data.alpha}, expected {1 - 2 * m}")
    if data.un is None:
        raise ValueError("u_n is required")


class OddSolver:
    """Jump tables and field values for alpha = 1 - 2m.

    ``n_circle`` counts outer nodes on C_a (split between the two sheets),
    ``n_inner`` the nodes of each remainder integral.
    """

    def __init__(self, data, m, n_circle=512, n_inner=48, corrected=True):
        _check(data, m)
        if corrected and m > 1:
            raise NotImplementedError(
                "boundary-only evaluation is available for m <= 1; pass corrected=False for the uncorrected formula")
        self.data = data
        self.m = m
        self.a = data.a
        self.n_circle = int(n_circle)
        self.n_inner = int(n_inner)
        self.corrected = corrected
        self.F = tangential_derivatives(data.ut, data.un, data.a, m + 0.5, m)
        self.c = c_coeffs_odd(m)
        self.c_last = c_last(m)
        self._tables = {}
        self._lifted = None
        if data.trace is None:
            raise ValueError("the trace of u is needed; supply trace_anchor")

    # jumps --------------------------------------------------------------
    def J0(self, th_r, k, sheet, start_lam=None):
        m = self.m
        if m == 0:
            return np.zeros(np.shape(k), dtype=complex)
        zr = self.a + np.exp(1j * th_r)
        k = np.asarray(k, dtype=complex)
        lam = (1 if sheet == 1 else -1) * lambda_ref(zr, k) if start_lam is None else start_lam
        th = np.full(k.shape, th_r)
        out = 0j
        for j in range(m):
            out = out + 2 * self.c[j] / lam * (k - zr) ** (j - m + 1) * (k + np.conj(zr)) ** (-m - j) * self.F[j](th, k)
        return out

    def jump(self, th_r, th_k, sheet):
        """Jump at k = a + e^{i th_k}, th_k in [th_r, pi - th_r] (sheet 1) or [-pi - th_r, th_r] (sheet 2)."""
        th_k = np.atleast_1d(np.asarray(th_k, dtype=float))
        k = self.a + np.exp(1j * th_k)
        th_l = np.pi - th_r if sheet == 1 else np.pi - th_r - 2 * np.pi
        at_left = np.abs(th_k - th_l) < ENDPOINT_TOL
        sgn = 1 if sheet == 1 else -1
        zr = self.a + np.exp(1j * th_r)
        # start determination at z' = z_r; at (or next to) the cut through z_r it
        # is the one-sided limit: sheet 1 approaches from above, sheet 2 from below
        near = at_left | (on_cut(zr, k, SIDE_TOL) & (np.abs(k - zr) > 1e-8))
        lam0 = np.empty(k.shape, dtype=complex)
        if np.any(~near):
            lam0[~near] = sgn * lambda_ref(zr, k[~near], check=False, diff=arc_diff(th_k[~near], th_r))
        if np.any(near):
            lam0[near] = sgn * lambda_limit(zr, k[near], sgn)
        out = self.J0(th_r, k, sheet, lam0)
        # remainder integral with sqrt-graded nodes at theta' = th_k
        g = gauss_legendre(self.n_inner, 0.0, 1.0)
        L = (th_k - th_r)[:, None]
        s = g.nodes[None, :]
        thp = th_k[:, None] - L * s * s
        wts = 2.0 * L * s * g.weights[None, :]
        kk = np.broadcast_to(k[:, None], thp.shape)
        zp = self.a + np.exp(1j * thp)
        d = 2j * np.sin(0.5 * L * s * s) * np.exp(0.5j * (th_k[:, None] + thp))
        lam = sgn * lambda_ref(zp, kk, check=False, diff=d)
        # same threshold as the z_l test, so a crossing just after z_r is never lost
        flips = cut_crossings(th_r, thp, kk, self.a, tol=ENDPOINT_TOL)
        flips = flips + at_left[:, None]
        lam = lam * (1 - 2 * (flips % 2))
        m = self.m
        Fm = self.F[m](thp.ravel(), kk.ravel()).reshape(thp.shape)
        integrand = 2 * self.c_last / lam * (kk + np.conj(zp)) ** (-2 * m) * Fm * 1j * np.exp(1j * thp)
        return out + np.sum(integrand * wts, axis=1)

    def jump_at(self, z, k, sheet):
        """Jump for interior z at a point k of C_a or of -C_a (mirror symmetry)."""
        k = complex(k)
        th_r = theta_r(z, self.data.dom)
        if abs(abs(k - self.a) - 1.0) > 1e-9:
            if abs(abs(-np.conj(k) - self.a) - 1.0) > 1e-9:
                raise ValueError("k is not on the jump contour")
            return np.conj(self.jump_at(z, -np.conj(k), sheet))
        t = np.angle(k - self.a)
        if sheet == 1:
            t = t if t >= th_r - 1e-14 else t + 2 * np.pi
            if t > np.pi - th_r + 1e-12:
                raise ValueError("k is not on the upper arc")
        else:
            t = t if t <= th_r + 1e-14 else t - 2 * np.pi
            if t < np.pi - th_r - 2 * np.pi - 1e-12:
                raise ValueError("k is not on the lower arc")
        return complex(self.jump(th_r, t, sheet)[0])

    # outer integral -----------------------------------------------------
    def table(self, th_r):
        key = round(float(th_r), 15)
        if key not in self._tables:
            n = self.n_circle // 2
            th_l = np.pi - th_r
            zr = self.a + np.exp(1j * th_r)
            legs = []
            for sheet, t0, t1 in ((1, th_r, th_l), (2, th_l, th_r + 2 * np.pi)):
                rule = cosine_graded(t0, t1, n)
                t = rule.nodes
                tk = t if sheet == 1 else t - 2 * np.pi
                k = self.a + np.exp(1j * t)
                J = self.jump(th_r, tk, sheet)
                Jt = ((k - zr) * (k + np.conj(zr))) ** self.m * J
                legs.append((sheet, k, Jt * 1j * np.exp(1j * t) * rule.weights))
            self._tables[key] = legs
        return self._tables[key]

    def uncorrected(self, z):
        z = complex(z)
        self.data.dom.check_interior(z)
        th_r = theta_r(z, self.data.dom)
        total = 0j
        for sheet, k, wJ in self.table(th_r):
            lam = (1 if sheet == 1 else -1) * lambda_ref(z, k, check=False)
            total += np.sum(wJ / lam)
        return float(-total.imag / (2 * np.pi) + self.data.u_at(th_r))

    def lifted(self):
        if self._lifted is None:
            self._lifted = OddSolver(lift_data(self.data), 0, self.n_circle, self.n_inner)
        return self._lifted

    def __call__(self, z):
        val = self.uncorrected(z)
        if self.m == 1 and self.corrected:
            z = complex(z)
            zl, zr = chord_endpoints(z, self.data.dom)
            val += (z.real ** 2 - zr.real ** 2) * self.lifted()(z)
        return val


def lift_data(data, extra=None):
    """Boundary data of v = u_x / x (solves the equation with coefficient alpha + 2).

    On C_a: u_x = cos t u_n - sin t u_t, u_rr follows from the equation,
    d_r u_x = cos t u_rr - sin t (d_t u_n - u_t), v_n = d_r u_x / x - u_x cos t / x^2.
    """
    if data.un is None:
        raise ValueError("u_n is required")
    a = data.a
    N = data.N
    if extra is None:
        extra = int(np.ceil(38.0 / np.arccosh(a)))
    N2 = min(N + extra, 1024)
    M = 4 * N2 + 4
    th = 2 * np.pi * np.arange(M) / M
    c, s = np.cos(th), np.sin(th)
    x = a + c
    ut = data.ut.samples(M).real
    un = data.un.samples(M).real
    dut = deriv_t(data.ut).samples(M).real
    dun = deriv_t(data.un).samples(M).real
    ux = c * un - s * ut
    urr = -data.alpha / x * ux - un - dut
    drux = c * urr - s * (dun - ut)
    v = ux / x
    vn = drux / x - ux * c / x ** 2
    trace = fit(th, v, N2).real()
    vt = deriv_t(trace)
    vt.coeffs[vt.N] = 0.0
    return BoundaryData(data.alpha + 2, a, vt, fit(th, vn, N2).real(), trace)


def solve_odd(z, data, m, n_circle=512, n_inner=48, corrected=True):
    """u(z) for alpha = 1 - 2m."""
    return OddSolver(data, m, n_circle, n_inner, corrected)(z)


def solve_odd_grid(points, data, m, **kw):
    solver = OddSolver(data, m, **kw)
    return np.array([solver(z) for z in np.ravel(points)]).reshape(np.shape(points))


def J0_odd(zr, k, data, m, sheet=1):
    """Boundary term of the jump with the determination started at z_r on ``sheet``."""
    solver = OddSolver(data, m, corrected=False)
    return solver.J0(float(np.angle(complex(zr) - data.a)), k, sheet)


def jump_odd(z, k, sheet, data, m, n_inner=48):
    return OddSolver(data, m, n_inner=n_inner, corrected=False).jump_at(z, k, sheet)
