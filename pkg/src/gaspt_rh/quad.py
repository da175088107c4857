"""Quadrature rules: periodic trapezoid, Gauss-Legendre, and endpoint-graded variants."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str

    def integrate(self, f):
        vals = np.asarray(f(self.nodes))
        if not np.all(np.isfinite(vals)):
            bad = int(np.flatnonzero(~np.isfinite(vals))[0])
            raise FloatingPointError(f"non-finite integrand at node {bad} ({self.kind})")
        return np.sum(vals * self.weights)


@lru_cache(maxsize=None)
def _gauss(n):
    if n < 1:
        raise ValueError("need at least one node")
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, n + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = n * (x * p1 - p0) / (x * x - 1.0) if n > 1 else np.ones_like(x)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = n * (x * p1 - p0) / (x * x - 1.0) if n > 1 else np.ones_like(x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n, lo=-1.0, hi=1.0):
    """n-point Gauss-Legendre rule on [lo, hi] (nodes by Newton iteration, cached)."""
    x, w = _gauss(int(n))
    half = 0.5 * (hi - lo)
    return QuadratureRule(lo + half * (x + 1.0), half * w, "gauss-legendre")


def periodic_trapezoid(n, length=2 * np.pi):
    t = length * np.arange(n) / n
    return QuadratureRule(t, np.full(n, length / n), "periodic-trapezoid")


def integrate_circle(f, n):
    """Trapezoid value of the integral of f(theta) d theta over [0, 2 pi)."""
    return periodic_trapezoid(n).integrate(f)


def integrate_segment(f, a_end, b_end, n):
    """Gauss-Legendre value of the integral of f along the straight segment [a_end, b_end]."""
    r = gauss_legendre(n)
    mid = 0.5 * (a_end + b_end)
    half = 0.5 * (b_end - a_end)
    return half * np.sum(r.weights * f(mid + half * r.nodes))


def sqrt_endpoint(t_sing, t_other, n):
    """Rule for integrals over [t_sing, t_other] whose integrand has a 1/sqrt singularity at t_sing.

    Uses t = t_sing + L s**2 with L = t_other - t_sing, so the weights carry
    the factor 2 L s. ``t_other`` may lie on either side of ``t_sing``;
    weights are signed so the rule integrates from t_sing to t_other.
    """
    g = gauss_legendre(n, 0.0, 1.0)
    L = t_other - t_sing
    s = g.nodes
    return QuadratureRule(t_sing + L * s * s, 2.0 * L * s * g.weights, "sqrt-endpoint")


def sqrt_endpoint_rule(g, t0, t1, n):
    """Integral of g(t)/sqrt(t - t0) over [t0, t1] for smooth g."""
    if not t1 > t0:
        raise ValueError("the singular endpoint must be the left end")
    r = gauss_legendre(n, 0.0, np.sqrt(t1 - t0))
    return 2.0 * np.sum(r.weights * g(t0 + r.nodes ** 2))


def cosine_graded(t0, t1, n):
    """Gauss rule after t = t0 + L (1 - cos(pi s)) / 2; clusters nodes at both ends."""
    g = gauss_legendre(n, 0.0, 1.0)
    L = t1 - t0
    s = g.nodes
    t = t0 + 0.5 * L * (1.0 - np.cos(np.pi * s))
    w = 0.5 * L * np.pi * np.sin(np.pi * s) * g.weights
    return QuadratureRule(t, w, "cosine-graded")
