"""Disk geometry in the right half-plane.

The disk is D(a, 1) with a > 1, boundary C_a parametrized by
z = a + exp(i theta), so arclength equals theta.
"""
from dataclasses import dataclass

import numpy as np

BOUNDARY_TOL = 1e-8


@dataclass(frozen=True)
class DiskDomain:
    a: float
    radius: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.a) or self.a <= 1.0:
            raise ValueError(f"center abscissa must satisfy a > 1, got {self.a}")
        if self.radius != 1.0:
            raise ValueError("only the unit radius is supported")

    def point(self, theta):
        return self.a + np.exp(1j * np.asarray(theta))

    def tangent(self, theta):
        return 1j * np.exp(1j * np.asarray(theta))

    def normal(self, theta):
        return np.exp(1j * np.asarray(theta))

    def theta_of(self, z):
        return np.angle(np.asarray(z) - self.a)

    def contains(self, z, tol=BOUNDARY_TOL):
        """True for points of the open disk farther than ``tol`` from C_a."""
        return np.abs(np.asarray(z) - self.a) < 1.0 - tol

    def check_interior(self, z):
        if not np.all(self.contains(z)):
            raise ValueError(f"point {z} is not strictly inside D({self.a}, 1)")


@dataclass(frozen=True)
class CirclePoint:
    theta: float
    z: complex
    tangent: complex

    @classmethod
    def at(cls, dom, theta):
        theta = float(np.mod(theta, 2 * np.pi))
        return cls(theta, complex(dom.point(theta)), complex(dom.tangent(theta)))


def mirror(z):
    """z -> -conj(z); maps C_a onto -C_a."""
    return -np.conj(z)


def chord_endpoints(z, dom):
    """Points of C_a on the horizontal line through z, left one first."""
    z = complex(z)
    dom.check_interior(z)
    y = z.imag
    half = np.sqrt(1.0 - y * y)
    return complex(dom.a - half, y), complex(dom.a + half, y)


def theta_r(z, dom):
    """Angle of z_r; lies in (-pi/2, pi/2)."""
    return float(np.arcsin(np.clip(complex(z).imag, -1.0, 1.0)))


@dataclass(frozen=True)
class Leg:
    kind: str  # "arc" or "segment"
    start: float | complex
    end: float | complex
    a: float

    def point(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "arc":
            return self.a + np.exp(1j * (self.start + (self.end - self.start) * s))
        return self.start + (self.end - self.start) * s

    def velocity(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "arc":
            d = self.end - self.start
            return 1j * d * np.exp(1j * (self.start + d * s))
        return np.full(s.shape, self.end - self.start, dtype=complex)

    @property
    def length(self):
        if self.kind == "arc":
            return abs(self.end - self.start)
        return abs(self.end - self.start)


@dataclass(frozen=True)
class Path:
    legs: tuple

    @property
    def start(self):
        return complex(self.legs[0].point(0.0))

    @property
    def end(self):
        return complex(self.legs[-1].point(1.0))


def gamma_path(z, side, dom):
    """Arc of C_a from z_r to z_l (over the top for "upper"), then the chord to z."""
    zl, zr = chord_endpoints(z, dom)
    tr = theta_r(z, dom)
    tl = np.pi - tr
    if side == "upper":
        arc = Leg("arc", tr, tl, dom.a)
    elif side == "lower":
        arc = Leg("arc", tr, tl - 2 * np.pi, dom.a)
    else:
        raise ValueError("side must be 'upper' or 'lower'")
    return Path((arc, Leg("segment", zl, complex(z), dom.a)))
