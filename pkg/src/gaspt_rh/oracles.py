"""Independent ground truth for the solvers.

Exact solutions are sympy expressions in x, y checked against
Delta u + (alpha/x) u_x = 0 at construction. A second-order polar finite
difference solver gives a brute-force Dirichlet reference.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
import sympy as sym

from .boundary import BoundaryData, TrigSeries, fit
from .geometry import DiskDomain
from .quad import gauss_legendre

X, Y = sym.symbols("x y", real=True)

RESIDUAL_TOL = 1e-10


def pde_residual(expr, alpha):
    return sym.diff(expr, X, 2) + sym.diff(expr, Y, 2) + sym.Integer(alpha) / X * sym.diff(expr, X)


@dataclass
class ExactSolution:
    expr: object
    alpha: int
    kind: str = "closure"
    name: str = ""
    _fns: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.expr = sym.sympify(self.expr)
        self.alpha = int(self.alpha)
        if not self.name:
            self.name = str(self.expr)
        ux = sym.diff(self.expr, X)
        uy = sym.diff(self.expr, Y)
        self._fns = {
            "u": sym.lambdify((X, Y), self.expr, "numpy"),
            "ux": sym.lambdify((X, Y), ux, "numpy"),
            "uy": sym.lambdify((X, Y), uy, "numpy"),
            "res": sym.lambdify((X, Y), pde_residual(self.expr, self.alpha), "numpy"),
        }
        self.check()

    def _call(self, name, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.broadcast_to(self._fns[name](x, y), np.broadcast(x, y).shape).astype(float)

    def u(self, x, y):
        return self._call("u", x, y)

    def ux(self, x, y):
        return self._call("ux", x, y)

    def uy(self, x, y):
        return self._call("uy", x, y)

    def at(self, z):
        z = np.asarray(z, dtype=complex)
        return self.u(z.real, z.imag)

    def residual(self, x, y):
        return self._call("res", x, y)

    def check(self, a=2.0, npts=100, seed=0):
        """Max PDE residual at random points of D(a, 1), scaled; raises above tolerance."""
        rng = np.random.default_rng(seed)
        r = np.sqrt(rng.uniform(0, 1, npts)) * 0.95
        t = rng.uniform(0, 2 * np.pi, npts)
        x = a + r * np.cos(t)
        y = r * np.sin(t)
        scale = max(1.0, float(np.max(np.abs(self.u(x, y)))))
        res = float(np.max(np.abs(self.residual(x, y)))) / scale
        if res > RESIDUAL_TOL:
            raise ValueError(f"{self.name} does not solve E_{self.alpha}: residual {res:.3e}")
        return res


def poly_solutions(alpha, max_degree):
    """Basis of solutions sum c_jk x^{2j} y^k with 2j + k <= max_degree (exact null space)."""
    if max_degree > 12:
        raise ValueError("max_degree must be at most 12")
    monos = [(j, k) for d in range(max_degree + 1) for j in range(d // 2 + 1) for k in [d - 2 * j]]
    images = [sym.expand(pde_residual(X ** (2 * j) * Y ** k, alpha)) for j, k in monos]
    targets = sorted({t for im in images for t in sym.Poly(im, X, Y).monoms()}) if images else []
    A = sym.zeros(len(targets), len(monos))
    for c, im in enumerate(images):
        if im == 0:
            continue
        for mono, coef in sym.Poly(im, X, Y).terms():
            A[targets.index(mono), c] = coef
    basis = A.nullspace() if targets else [sym.eye(len(monos))[:, i] for i in range(len(monos))]
    out = []
    for v in basis:
        v = v / max(abs(e) for e in v if e != 0)
        expr = sym.expand(sum(v[i] * X ** (2 * j) * Y ** k for i, (j, k) in enumerate(monos)))
        out.append(ExactSolution(expr, alpha, "bivariate-poly-in-x2-y"))
    return out


def lift(u):
    """x^{-1} u_x, a solution of E_{alpha+2}."""
    expr = sym.simplify(sym.diff(u.expr, X) / X)
    if expr == 0:
        raise ValueError("lift of a function of y alone vanishes identically")
    kind = "rational" if sym.denom(sym.together(expr)).has(X) else u.kind
    return ExactSolution(expr, u.alpha + 2, kind)


def sym_map(u):
    """x^{alpha-1} u, a solution of E_{2-alpha}."""
    expr = sym.simplify(X ** (u.alpha - 1) * u.expr)
    kind = "rational" if sym.denom(sym.together(expr)).has(X) else u.kind
    return ExactSolution(expr, 2 - u.alpha, kind)


class ConjugateSolution:
    """v with v_x = -sigma u_y, v_y = sigma u_x, sigma = x^p, by line integration from a base point."""

    def __init__(self, u, p, base_point, n=32):
        self.u = u
        self.p = int(p)
        self.base = complex(base_point)
        self.rule = gauss_legendre(n, 0.0, 1.0)

    def vx(self, x, y):
        return -np.asarray(x, float) ** self.p * self.u.uy(x, y)

    def vy(self, x, y):
        return np.asarray(x, float) ** self.p * self.u.ux(x, y)

    def at(self, z):
        z = np.asarray(z, dtype=complex)
        d = z[..., None] - self.base
        pts = self.base + d * self.rule.nodes
        integrand = self.vx(pts.real, pts.imag) * d.real + self.vy(pts.real, pts.imag) * d.imag
        return np.sum(integrand * self.rule.weights, axis=-1)

    def residual(self, x, y, h=1e-4):
        """Finite-difference value of div(x^{-p} grad v)."""
        def flux_x(xx, yy):
            return xx ** (-self.p) * self.vx(xx, yy)

        def flux_y(xx, yy):
            return xx ** (-self.p) * self.vy(xx, yy)
        return ((flux_x(x + h, y) - flux_x(x - h, y)) + (flux_y(x, y + h) - flux_y(x, y - h))) / (2 * h)


def cr_conjugate(u, base_point, p=None):
    """Conjugate of u for sigma = x^p (p defaults to alpha, since Div(x^alpha grad u) = 0 is E_alpha)."""
    return ConjugateSolution(u, u.alpha if p is None else p, base_point)


@dataclass
class FDGrid:
    a: float
    r: np.ndarray
    theta: np.ndarray
    values: np.ndarray  # shape (len(r), len(theta))
    h: float
    residual: float

    def points(self):
        return self.a + np.multiply.outer(self.r, np.exp(1j * self.theta))


def fd_solve(alpha, trace, h, a=2.0, n_theta=None):
    """Second-order polar finite differences about a with Dirichlet trace on r = 1.

    Rings sit at r_i = (i - 1/2) h with r = 1 half a cell beyond the last ring;
    the center is closed by the reflection u(-r, t) = u(r, t + pi).
    """
    M = int(round(1.0 / h - 0.5))
    h = 1.0 / (M + 0.5)
    if n_theta is None:
        n_theta = 2 * int(np.ceil(np.pi / h / 2))
    n_theta += n_theta % 2
    if M * n_theta > 10 ** 5:
        raise ValueError("grid exceeds 1e5 unknowns")
    r = (np.arange(1, M + 1) - 0.5) * h
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    dt = th[1]
    g = np.real(trace(th)) if isinstance(trace, TrigSeries) else np.asarray(trace(th), dtype=float)
    idx = lambda i, j: i * n_theta + (j % n_theta)
    rows, cols, vals = [], [], []
    rhs = np.zeros(M * n_theta)
    ct, st = np.cos(th), np.sin(th)
    for i in range(M):
        ri = r[i]
        x = a + ri * ct
        cr = alpha / x * ct  # coefficient of u_r from (alpha/x) u_x
        ctt = -alpha / x * st / ri  # coefficient of u_theta
        a_p = 1 / h ** 2 + (1 / ri + cr) / (2 * h)
        a_m = 1 / h ** 2 - (1 / ri + cr) / (2 * h)
        b = 1 / (ri * dt) ** 2
        b_p = b + ctt / (2 * dt)
        b_m = b - ctt / (2 * dt)
        for j in range(n_theta):
            k = idx(i, j)
            rows.append(k); cols.append(k); vals.append(-2 / h ** 2 - 2 * b)
            rows += [k, k]; cols += [idx(i, j + 1), idx(i, j - 1)]; vals += [b_p[j], b_m[j]]
            if i + 1 < M:
                rows.append(k); cols.append(idx(i + 1, j)); vals.append(a_p[j])
            else:
                rhs[k] -= a_p[j] * g[j]
            if i > 0:
                rows.append(k); cols.append(idx(i - 1, j)); vals.append(a_m[j])
            else:
                rows.append(k); cols.append(idx(0, j + n_theta // 2)); vals.append(a_m[j])
    A = sp.csr_matrix((vals, (rows, cols)), shape=(M * n_theta, M * n_theta))
    sol = spla.spsolve(A.tocsc(), rhs)
    res = float(np.max(np.abs(A @ sol - rhs))) / max(1.0, float(np.max(np.abs(rhs))))
    if not np.isfinite(res) or res > 1e-8:
        raise RuntimeError(f"finite-difference solve failed, residual {res:.3e}")
    return FDGrid(a, r, th, sol.reshape(M, n_theta), h, res)


def boundary_trace(u, dom, N=64, M=None):
    """u, u_t, u_n of an exact solution on C_a as truncated Fourier series."""
    if isinstance(dom, (int, float)):
        dom = DiskDomain(float(dom))
    M = M or max(4 * N + 4, 256)
    th = 2 * np.pi * np.arange(M) / M
    x = dom.a + np.cos(th)
    y = np.sin(th)
    gx, gy = u.ux(x, y), u.uy(x, y)
    ut = -np.sin(th) * gx + np.cos(th) * gy
    un = np.cos(th) * gx + np.sin(th) * gy
    tr = fit(th, u.u(x, y), N).real()
    ts = fit(th, ut, N).real()
    ts.coeffs[ts.N] = 0.0
    return BoundaryData(u.alpha, dom.a, ts, fit(th, un, N).real(), tr, {"oracle": u.name})


def harmonic_re_power(n, center=0.0):
    """Re((z - center)^n) as a solution of E_0."""
    zz = (X - center) + sym.I * Y
    return ExactSolution(sym.expand(sym.re(sym.expand(zz ** n))), 0, "bivariate-poly-in-x2-y" if center == 0 else "closure")


def named(name, a=2.0):
    """Registry of the oracles used by the test suite and the CLI."""
    table = {
        "x": ("x", 0),
        "x2-y2": ("x**2 - y**2", 0),
        "x3": ("x**3", -2),
        "x2+y2": ("x**2 + y**2", -2),
        "x2-2y2": ("x**2 - 2*y**2", 1),
        "x2": ("x**2", -1),
        "4x4-16x2y2": ("4*x**4 - 16*x**2*y**2", -1),
        "3x-3y2/x": ("3*x - 3*y**2/x", 2),
        "const": ("1", 0),
    }
    if name == "re-z-a-3":
        zz = (X - a) + sym.I * Y
        return ExactSolution(sym.expand(sym.re(sym.expand(zz ** 3))), 0, "closure", name)
    if name not in table:
        raise KeyError(f"unknown oracle {name!r}; choose from {sorted(table) + ['re-z-a-3']}")
    expr, alpha = table[name]
    return ExactSolution(sym.sympify(expr, locals={"x": X, "y": Y}), alpha, name=name)
