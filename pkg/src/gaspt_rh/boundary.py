"""Boundary data on C_a as truncated Fourier series in theta."""
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .geometry import DiskDomain

DEFAULT_N = 64


class TrigSeries:
    """sum_{n=-N}^{N} c_n exp(i n theta)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size % 2 == 0:
            raise ValueError("coefficient array must have odd length 2N+1")
        self.coeffs = c

    @classmethod
    def zeros(cls, N):
        return cls(np.zeros(2 * N + 1, dtype=complex))

    @classmethod
    def from_function(cls, f, N=DEFAULT_N, M=None):
        M = M or max(4 * N + 4, 256)
        th = 2 * np.pi * np.arange(M) / M
        return fit(th, f(th), N)

    @property
    def N(self):
        return (self.coeffs.size - 1) // 2

    @property
    def n(self):
        return np.arange(-self.N, self.N + 1)

    def __getitem__(self, n):
        if abs(n) > self.N:
            return 0j
        return self.coeffs[n + self.N]

    def is_real(self, tol=1e-12):
        c = self.coeffs
        return np.max(np.abs(c - np.conj(c[::-1])), initial=0.0) <= tol * max(1.0, np.max(np.abs(c)))

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = _accel.trig_poly_eval(self.coeffs[None, :], -self.N, theta.ravel())
        return out.reshape(theta.shape)

    def samples(self, M):
        """Values on the uniform grid theta_j = 2 pi j / M (requires M > 2N)."""
        if M <= 2 * self.N:
            raise ValueError("grid too coarse for this series")
        buf = np.zeros(M, dtype=complex)
        buf[self.n % M] = self.coeffs
        return np.fft.ifft(buf) * M

    def pad(self, N):
        if N < self.N:
            raise ValueError("cannot pad to a smaller order")
        c = np.zeros(2 * N + 1, dtype=complex)
        c[N - self.N:N + self.N + 1] = self.coeffs
        return TrigSeries(c)

    def truncate(self, N):
        if N >= self.N:
            return self.pad(N)
        return TrigSeries(self.coeffs[self.N - N:self.N + N + 1])

    def __add__(self, other):
        if np.isscalar(other):
            c = self.coeffs.copy()
            c[self.N] += other
            return TrigSeries(c)
        N = max(self.N, other.N)
        return TrigSeries(self.pad(N).coeffs + other.pad(N).coeffs)

    __radd__ = __add__

    def __neg__(self):
        return TrigSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if np.isscalar(other):
            return TrigSeries(self.coeffs * other)
        return TrigSeries(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def shift(self, p):
        """Multiply by exp(i p theta)."""
        N = self.N + abs(p)
        c = np.zeros(2 * N + 1, dtype=complex)
        c[N - self.N + p:N + self.N + p + 1] = self.coeffs
        return TrigSeries(c)

    def conj(self):
        return TrigSeries(np.conj(self.coeffs[::-1]))

    def real(self):
        return (self + self.conj()) * 0.5

    def mean(self):
        return self.coeffs[self.N]

    def norm(self):
        return float(np.sqrt(2 * np.pi * np.sum(np.abs(self.coeffs) ** 2)))

    def __repr__(self):
        return f"TrigSeries(N={self.N})"


# trigonometric building blocks on C_a (radius 1)
def e_series(p):
    return TrigSeries(np.array([1.0 + 0j])).shift(p)


def cos_series():
    return (e_series(1) + e_series(-1)) * 0.5


def sin_series():
    return (e_series(1) - e_series(-1)) * (-0.5j)


def x_series(a):
    return cos_series() + a


def fit(theta, values, N):
    """Discrete Fourier interpolant of samples on a uniform grid starting at 0."""
    theta = np.asarray(theta, dtype=float)
    values = np.asarray(values)
    M = theta.size
    if M < 2 * N + 1:
        raise ValueError(f"need at least {2 * N + 1} samples, got {M}")
    grid = 2 * np.pi * np.arange(M) / M
    if not np.allclose(theta, grid, atol=1e-12, rtol=0):
        raise ValueError("samples must lie on the uniform grid 2 pi j / M")
    c = np.fft.fft(values) / M
    n = np.arange(-N, N + 1)
    out = c[n % M].astype(complex)
    if M % 2 == 0 and N == M // 2:
        out[0] *= 0.5
        out[-1] *= 0.5
    return TrigSeries(out)


def deriv_t(s, order=1):
    """Tangential derivative d^j/d theta^j (radius one, so d/dt = d/d theta)."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return TrigSeries(s.coeffs * (1j * s.n) ** order)


def complex_to_directional(uz_dz, uzbar_dzbar):
    """From u_z dz and u_zbar dzbar per unit ds to (u_t, u_n)."""
    uz_dz = np.asarray(uz_dz)
    uzbar_dzbar = np.asarray(uzbar_dzbar)
    return uz_dz + uzbar_dzbar, -1j * (uz_dz - uzbar_dzbar)


def directional_to_complex(ut, un):
    """Inverse of ``complex_to_directional``: u_z dz = (u_t + i u_n)/2 ds."""
    ut = np.asarray(ut)
    un = np.asarray(un)
    return 0.5 * (ut + 1j * un), 0.5 * (ut - 1j * un)


def trace_from_ut(ut, anchor_value, tol=1e-10):
    """Antiderivative of u_t in theta taking ``anchor_value`` at theta = 0."""
    scale = max(1.0, float(np.max(np.abs(ut.coeffs), initial=0.0)))
    if abs(ut.mean()) > tol * scale:
        raise ValueError(f"u_t has nonzero mean {ut.mean()}")
    n = ut.n
    c = np.zeros_like(ut.coeffs)
    nz = n != 0
    c[nz] = ut.coeffs[nz] / (1j * n[nz])
    c[ut.N] = anchor_value - np.sum(c[nz])
    if np.isrealobj(anchor_value) and ut.is_real():
        c[ut.N] = c[ut.N].real
    return TrigSeries(c)


@dataclass
class BoundaryData:
    """u_t, u_n and optionally the trace of u on C_a for the equation with coefficient alpha."""
    alpha: int
    a: float
    ut: TrigSeries
    un: TrigSeries | None = None
    trace: TrigSeries | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if int(self.alpha) != self.alpha:
            raise ValueError("alpha must be an integer")
        self.alpha = int(self.alpha)
        self.dom = DiskDomain(float(self.a))
        for name in ("ut", "un", "trace"):
            s = getattr(self, name)
            if s is not None and not s.is_real(1e-9):
                raise ValueError(f"{name} is not a real series")
        scale = max(1.0, float(np.max(np.abs(self.ut.coeffs), initial=0.0)))
        if abs(self.ut.mean()) > 1e-9 * scale:
            raise ValueError("u_t must have zero mean")

    @property
    def N(self):
        return max(s.N for s in (self.ut, self.un, self.trace) if s is not None)

    @classmethod
    def from_trace(cls, alpha, a, trace, un=None):
        return cls(alpha, a, deriv_t(trace), un, trace)

    def with_anchor(self, value):
        """Attach a trace reconstructed from u_t with u(theta=0) = value."""
        return BoundaryData(self.alpha, self.a, self.ut, self.un, trace_from_ut(self.ut, value), dict(self.meta))

    def u_at(self, theta):
        if self.trace is None:
            raise ValueError("the trace of u is needed; supply trace_anchor")
        vals = np.real(self.trace(np.asarray(theta, dtype=float)))
        return float(vals) if vals.ndim == 0 else vals

    def norm(self):
        parts = [s.norm() for s in (self.ut, self.un) if s is not None]
        return float(np.sqrt(sum(p * p for p in parts)))
