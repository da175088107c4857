"""Parity dispatch for field evaluation.

alpha <= 1 goes straight to the even or odd representation. Larger alpha
is served through v = x^{alpha-1} u, which solves the equation with
coefficient 2 - alpha <= 0; the boundary data of v follow from those of u.
"""
from dataclasses import dataclass, field

import numpy as np

from .boundary import BoundaryData, deriv_t, fit
from .rh_even import solve_even
from .rh_odd import OddSolver


@dataclass
class FieldResult:
    points: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)


def grid(a, nx=20, ny=20, margin=0.1):
    """Points of a regular nx x ny box grid kept at distance >= margin from C_a."""
    if margin < 0.05:
        raise ValueError("margin must be at least 0.05")
    r = 1.0 - margin
    xs = np.linspace(a - r, a + r, nx)
    ys = np.linspace(-r, r, ny)
    P = xs[None, :] + 1j * ys[:, None]
    return P[np.abs(P - a) <= r + 1e-12]


def sym_data(data):
    """Boundary data of x^{alpha-1} u (equation with coefficient 2 - alpha)."""
    if data.trace is None or data.un is None:
        raise ValueError("trace and u_n are required")
    al = data.alpha
    N = data.N + 48
    M = 4 * N + 4
    th = 2 * np.pi * np.arange(M) / M
    x = data.a + np.cos(th)
    u = data.trace.samples(M).real
    w = x ** (al - 1)
    vtr = fit(th, w * u, N).real()
    vn = fit(th, (al - 1) * x ** (al - 2) * np.cos(th) * u + w * data.un.samples(M).real, N).real()
    vt = deriv_t(vtr)
    vt.coeffs[vt.N] = 0.0
    return BoundaryData(2 - al, data.a, vt, vn, vtr, {"transform": f"x^{al - 1} u"})


def field_values(points, data, n_circle=None, n_chord=64, n_inner=48, corrected=True):
    points = np.asarray(points, dtype=complex)
    meta = {"alpha": data.alpha}
    work = data
    if data.alpha > 1:
        work = sym_data(data)
        meta["note"] = f"evaluated via v = x^{data.alpha - 1} u solving the equation with alpha = {work.alpha}"
    al = work.alpha
    if work.un is None:
        raise ValueError("u_n is required; run dtn first")
    if work.trace is None:
        raise ValueError("trace_anchor is required")
    if al % 2 == 0:
        n_circle = n_circle or 256
        vals = np.array([solve_even(z, work, -al // 2, n_circle, n_chord) for z in points.ravel()])
        meta.update(path="even", m=-al // 2, n_circle=n_circle, n_chord=n_chord)
    else:
        n_circle = n_circle or 512
        solver = OddSolver(work, (1 - al) // 2, n_circle, n_inner, corrected)
        vals = np.array([solver(z) for z in points.ravel()])
        meta.update(path="odd", m=(1 - al) // 2, n_circle=n_circle, n_inner=n_inner, corrected=corrected)
    vals = vals.reshape(points.shape)
    if data.alpha > 1:
        vals = vals / points.real ** (data.alpha - 1)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("non-finite field value")
    return FieldResult(points, vals, meta)
