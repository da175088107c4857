"""Dirichlet-to-Neumann conversion for even alpha through the global relation.

Negative case alpha = -2(m - 1): on the unit circle T (boundary point z + a),
f = (x + a) u_n, and the real functions f, u_t, y u_t split as
g_i(z) + conj(g_i(1/conj z)) with g_i holomorphic in the unit disk. With
h_i = z^{m-1} g_i the function h_1 solves

    sum_p alpha_p z^{m-1-p} (z^2 + 2az + 1)^p h^{(p)} = H + P_{2m-2},

H built from h_2, h_3. The solution analytic at the regular singular point
z1 = -a + sqrt(a^2 - 1) comes from a forward recurrence on its Taylor
coefficients about z1; the remaining polynomial ambiguity of f (a real
trigonometric polynomial of degree m - 1) is fixed by the global relation
itself at exterior spectral points.

Positive case alpha = 2(m + 1): the second closed form gives a relation of
the same shape for f = x^{2m+2} u_n with u_t replaced by
(x u_t - (2m+1) y u) x^{2m} and y u_t by (y x u_t - (2m+1)(1 + a cos t) u) x^{2m};
the same engine with order m + 1 applies.
"""
from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from .boundary import BoundaryData, TrigSeries, fit, trace_from_ut
from .lax import cut_crossings, lambda_ref

TRIM_TOL = 1e-14


@dataclass(frozen=True)
class MobiusFrame:
    a: float

    def __post_init__(self):
        if self.a <= 1.0:
            raise ValueError("a must exceed 1")

    @property
    def z1(self):
        return -self.a + np.sqrt(self.a ** 2 - 1)

    @property
    def z2(self):
        return -self.a - np.sqrt(self.a ** 2 - 1)

    @property
    def beta(self):
        return 2 * np.sqrt(self.a ** 2 - 1)

    @property
    def inner_center(self):
        return -2 * self.a / (4 * self.a ** 2 - 1)

    @property
    def inner_radius(self):
        return 1 / (4 * self.a ** 2 - 1)

    def phi(self, z):
        z = np.asarray(z, dtype=complex)
        return -z / (1 + 2 * self.a * z)

    def in_annulus(self, mu):
        mu = np.asarray(mu, dtype=complex)
        return (np.abs(mu) < 1) & (np.abs(mu - self.inner_center) > self.inner_radius)

    def mu_of(self, k):
        return -1 / (np.asarray(k, dtype=complex) + self.a)


@dataclass
class AnalyticCoeffs:
    """Truncated Taylor series sum taylor[n] (z - center)^n."""
    taylor: np.ndarray
    center: complex = 0j
    tail: float = 0.0

    def __post_init__(self):
        self.taylor = np.asarray(self.taylor, dtype=complex)
        if self.taylor.size == 0:
            self.taylor = np.zeros(1, dtype=complex)

    def __call__(self, z):
        w = np.asarray(z, dtype=complex) - self.center
        return np.polyval(self.taylor[::-1], w)

    def deriv(self, p=1):
        c = self.taylor
        for _ in range(p):
            c = c[1:] * np.arange(1, c.size) if c.size > 1 else np.zeros(1, dtype=complex)
        return AnalyticCoeffs(c, self.center)

    def trimmed(self, tol=TRIM_TOL):
        c = self.taylor
        big = np.flatnonzero(np.abs(c) > tol * max(np.max(np.abs(c)), 1e-300))
        n = big[-1] + 1 if big.size else 1
        return AnalyticCoeffs(c[:n], self.center, float(np.max(np.abs(c[n:]), initial=0.0)))

    def recenter(self, new_center):
        """Exact binomial transport (repeated synthetic division)."""
        out = self.taylor.copy()
        d = self.center - new_center
        d = -d
        n = out.size
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                out[j] += d * out[j + 1]
        return AnalyticCoeffs(out, new_center, self.tail)


# ---------------------------------------------------------------- series
def _pmul(p, q):
    return np.convolve(np.asarray(p, dtype=complex), np.asarray(q, dtype=complex))


def _padd(*ps):
    L = max(len(p) for p in ps)
    out = np.zeros(L, dtype=complex)
    for p in ps:
        out[:len(p)] += p
    return out


def _zpow(n):
    return np.r_[np.zeros(n), 1.0]


def split_real(series, K=None):
    """g with series = g(z) + conj(g(1/conj z)) on T; g(0) = c_0/2 (real), g_n = c_n."""
    if not series.is_real(1e-9):
        raise ValueError("series must be real-valued")
    K = series.N + 1 if K is None else K
    g = np.zeros(K, dtype=complex)
    g[0] = 0.5 * series.mean().real
    top = min(K - 1, series.N)
    g[1:top + 1] = series.coeffs[series.N + 1:series.N + top + 1]
    return AnalyticCoeffs(g)


def alpha_coeffs(m):
    """alpha_p = (-1)^{m-1+p} (2m-p-2)! / ((m-p-1)! p!), p = 0..m-1."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return np.array([(-1) ** (m - 1 + p) * factorial(2 * m - p - 2) / (factorial(m - p - 1) * factorial(p))
                     for p in range(m)], dtype=float)


def _inv_fact(q):
    return 0.0 if q < 0 else 1.0 / factorial(q)


def beta_coeff(m, ell, n, frame):
    """The double sum
    beta_l^n = (n-l)!/(n! beta^l) sum_k (beta/z1)^k / ((m-1-k)!(k-l)!)
               sum_p (-1)^p (2m-p-2)! / ((k-p)!(n-l-p)!(l+p-k)!),  with 1/q! = 0 for q < 0.

    The coefficient of z^n in the operator applied to z^{n-l} (about z1)
    is n! (-z1)^{m-1} times this value; see ``recurrence_coeff``.
    """
    if not 0 <= ell <= m - 1 or n < 0:
        raise ValueError("need 0 <= ell <= m-1 and n >= 0")
    if n - ell < 0:
        return 0.0
    b, z1 = frame.beta, frame.z1
    s = 0.0
    for k in range(m):
        inner = 0.0
        for p in range(m):
            inner += (-1) ** p * factorial(2 * m - p - 2) * _inv_fact(k - p) * _inv_fact(n - ell - p) * _inv_fact(ell + p - k)
        s += (b / z1) ** k * _inv_fact(m - 1 - k) * _inv_fact(k - ell) * inner
    return factorial(n - ell) / factorial(n) / b ** ell * s


def recurrence_coeff(m, ell, n, frame):
    """Coefficient of w^n in L[w^{n-l}] with w = z - z1 (equals n! (-z1)^{m-1} beta_coeff)."""
    if n - ell < 0:
        return 0.0
    b, z1 = frame.beta, frame.z1
    s = 0.0
    for k in range(m):
        inner = 0.0
        for p in range(m):
            if n - ell - p < 0:
                continue
            fall = float(np.prod(np.arange(n - ell - p + 1, n - ell + 1, dtype=float)))
            inner += (-1) ** p * factorial(2 * m - p - 2) * fall * _inv_fact(k - p) * _inv_fact(ell + p - k)
        s += (b / z1) ** k * _inv_fact(m - 1 - k) * _inv_fact(k - ell) * inner
    return (-z1) ** (m - 1) * s / b ** ell


def ode_apply(h, m, frame):
    """sum_p alpha_p z^{m-1-p}(z^2 + 2az + 1)^p h^{(p)} for h given about 0."""
    if h.center != 0:
        raise ValueError("expects coefficients about 0")
    al = alpha_coeffs(m)
    q = np.array([1.0, 2 * frame.a, 1.0])
    tot = np.zeros(1, dtype=complex)
    for p in range(m):
        t = _pmul(_zpow(m - 1 - p), h.deriv(p).taylor)
        for _ in range(p):
            t = _pmul(t, q)
        tot = _padd(tot, al[p] * t)
    return AnalyticCoeffs(tot)


def ode_solve(H, m, frame, extra=64):
    """Taylor coefficients about z1 of the solution analytic at z1.

    Forward recurrence sum_l a_{n-l} R_l^n = H_n (R = ``recurrence_coeff``),
    carried ``extra`` terms past the length of H.
    """
    if abs(H.center - frame.z1) > 1e-14:
        raise ValueError("H must be expanded about z1")
    Hn = np.r_[H.taylor, np.zeros(extra)]
    an = np.zeros(Hn.size, dtype=complex)
    for n in range(Hn.size):
        s = Hn[n]
        for ell in range(1, min(m, n + 1)):
            s -= an[n - ell] * recurrence_coeff(m, ell, n, frame)
        an[n] = s / recurrence_coeff(m, 0, n, frame)
    return AnalyticCoeffs(an, frame.z1)


def build_H(g2, g3, m, frame):
    """H = sum_p alpha_p z^{m-1-p}(z^2+2az+1)^p (h3^{(p)} - i(a + 1/z) h2^{(p)}), h_i = z^{m-1} g_i."""
    if abs(g2.taylor[0]) > 1e-10 * max(1.0, np.max(np.abs(g2.taylor))):
        raise ValueError("g2(0) must vanish (u_t has zero mean)")
    al = alpha_coeffs(m)
    h2 = AnalyticCoeffs(np.r_[np.zeros(m - 1), g2.taylor])
    h3 = AnalyticCoeffs(np.r_[np.zeros(m - 1), g3.taylor])
    h2.taylor[m - 1] = 0.0
    q = np.array([1.0, 2 * frame.a, 1.0])
    H = np.zeros(1, dtype=complex)
    for p in range(m):
        d3 = h3.deriv(p).taylor
        d2 = h2.deriv(p).taylor
        t1 = _pmul(_zpow(m - 1 - p), _padd(d3, -1j * frame.a * d2))
        t2 = _pmul(_zpow(m - 2 - p), d2) if m - 2 - p >= 0 else d2[1:]
        t = _padd(t1, -1j * t2)
        for _ in range(p):
            t = _pmul(t, q)
        H = _padd(H, al[p] * t)
    return AnalyticCoeffs(H)


def phi_contour(g, mu, m, frame, n=512):
    """int_T z^{m-1} g(z) / ((1 - phi(mu) z)^m (z - mu)^m) dz by trapezoid."""
    th = 2 * np.pi * np.arange(n) / n
    z = np.exp(1j * th)
    mu = complex(mu)
    ph = complex(frame.phi(mu))
    return np.sum(z ** (m - 1) * g(z) / ((1 - ph * z) ** m * (z - mu) ** m) * 1j * z) * 2 * np.pi / n


def phi_derivative(g, mu, m, frame):
    """(2 pi i/(m-1)!) d^{m-1}/dz^{m-1} [z^{m-1} g(z) / (1 - phi(mu) z)^m] at mu."""
    mu = complex(mu)
    ph = complex(frame.phi(mu))
    h = AnalyticCoeffs(np.r_[np.zeros(m - 1), g.taylor])
    total = 0j
    for r in range(m):
        # d^r/dz^r (1 - ph z)^{-m} = m(m+1)...(m+r-1) ph^r (1 - ph z)^{-m-r}
        rising = float(np.prod(np.arange(m, m + r, dtype=float)))
        dk = rising * ph ** r * (1 - ph * mu) ** (-m - r)
        total += comb(m - 1, r) * dk * h.deriv(m - 1 - r)(mu)
    return 2j * np.pi / factorial(m - 1) * total


def S_factor(mu, m, frame):
    mu = np.asarray(mu, dtype=complex)
    return (mu - frame.z1) ** (2 * m - 1) * (mu - frame.z2) ** (2 * m - 1) / (2 * frame.a * mu + 1) ** m


# -------------------------------------------------------- global relation
def exterior_points(a, n=32, radius=3.0, margin=0.05):
    """Deterministic spectral points on |k| = radius outside both closed disks."""
    ks = radius * np.exp(2j * np.pi * (np.arange(n) + 0.5) / n)
    keep = (np.abs(ks - a) > 1 + margin) & (np.abs(ks + a) > 1 + margin)
    return ks[keep]


def _grid(M):
    th = 2 * np.pi * np.arange(M) / M
    return th, np.exp(1j * th)


def global_residual(data, k, alpha=None, M=None):
    """oint_{C_a} [(k - z)(k + zbar)]^{alpha/2 - 1} ((k - i y) u_t + i x u_n) ds."""
    alpha = data.alpha if alpha is None else int(alpha)
    k = complex(k)
    a = data.a
    if abs(k - a) <= 1 or abs(k + a) <= 1:
        raise ValueError("k must lie outside both closed disks")
    if data.un is None:
        raise ValueError("u_n is required")
    M = M or max(512, 8 * data.N)
    th, e = _grid(M)
    z = a + e
    ut = data.ut.samples(M).real
    un = data.un.samples(M).real
    if alpha % 2 == 0:
        pw = ((k - z) * (k + np.conj(z))) ** ((alpha - 2) // 2)
    else:
        lam = lambda_ref(z, k, check=False)
        flips = cut_crossings(0.0, th, k, a)
        lam = lam * (1 - 2 * (flips % 2))
        pw = lam ** (alpha - 2)
    return complex(np.sum(pw * ((k - 1j * z.imag) * ut + 1j * z.real * un)) * 2 * np.pi / M)


def residual_norm(data, alpha=None, ks=None):
    ks = exterior_points(data.a) if ks is None else ks
    return float(np.max(np.abs([global_residual(data, k, alpha) for k in ks])))


# ---------------------------------------------------------------- engine
@dataclass
class DtNResult:
    un: TrigSeries
    residual_norm: float
    condition: float
    f: np.ndarray = field(repr=False, default=None)
    info: dict = field(default_factory=dict)


def _relation(k, order, a, F2, F3, f, M):
    th, e = _grid(M)
    z = a + e
    return np.sum(((k - z) * (k + np.conj(z))) ** (-order) * (F3 + 1j * k * F2 - f)) * 2 * np.pi / M


def _engine(order, F2, F3, a, M, K):
    """Recover f on the M-point grid from oint [..]^{-order} (F3 + i k F2 - f) = 0."""
    frame = MobiusFrame(a)
    th, e = _grid(M)
    s2 = fit(th, F2, K).real()
    s2.coeffs[s2.N] = 0.0
    s3 = fit(th, F3, K).real()
    g2 = split_real(s2, K + 1)
    g3 = split_real(s3, K + 1)
    m = order
    if m == 1:
        hv = build_H(g2, g3, 1, frame)(e)
    else:
        H = build_H(g2, g3, m, frame).trimmed()
        h = ode_solve(H.recenter(frame.z1), m, frame)
        hv = h(e)
    c = np.fft.fft(hv) / M
    ghat = c[m - 1:M // 2]
    f0 = 2 * np.real(np.polyval(ghat[::-1], e))
    basis = [np.ones(M)]
    for j in range(1, m):
        basis += [2 * np.cos(j * th), -2 * np.sin(j * th)]
    ks = exterior_points(a)
    zero = np.zeros(M)
    A = np.array([[_relation(k, m, a, zero, zero, b, M) for b in basis] for k in ks])
    rhs = -np.array([_relation(k, m, a, F2, F3, f0, M) for k in ks])
    Ar = np.r_[A.real, A.imag]
    br = np.r_[rhs.real, rhs.imag]
    coef, *_ = np.linalg.lstsq(Ar, br, rcond=None)
    f = f0 + sum(cf * b for cf, b in zip(coef, basis))
    res = max(abs(_relation(k, m, a, F2, F3, f, M)) for k in ks)
    return f, float(res), float(np.linalg.cond(Ar))


def _sizes(N):
    K = max(4 * N, 128)
    M = 2 * K + 256
    return K, M


def reconstruct_un_negative(ut, m, a, N_out=None):
    """u_n from u_t for alpha = -2(m - 1), m >= 1."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if isinstance(a, MobiusFrame):
        a = a.a
    K, M = _sizes(ut.N)
    th, e = _grid(M)
    x = a + np.cos(th)
    uts = ut.samples(M).real
    f, res, cond = _engine(m, uts, np.sin(th) * uts, a, M, K)
    N_out = N_out or ut.N
    un = fit(th, f / x, N_out).real()
    data = BoundaryData(-2 * (m - 1), a, ut, un)
    return DtNResult(un, residual_norm(data), cond, f, {"engine_residual": res, "K": K, "M": M})


def reconstruct_un_positive(trace, ut, m, a, N_out=None):
    """u_n from the trace and u_t for alpha = 2(m + 1), m >= 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if isinstance(a, MobiusFrame):
        a = a.a
    N = max(trace.N, ut.N)
    K, M = _sizes(N + 8)
    th, e = _grid(M)
    x = a + np.cos(th)
    y = np.sin(th)
    u = trace.samples(M).real
    uts = ut.samples(M).real
    w = x ** (2 * m)
    F2 = (x * uts - (2 * m + 1) * y * u) * w
    F3 = (y * x * uts - (2 * m + 1) * (1 + a * np.cos(th)) * u) * w
    f, res, cond = _engine(m + 1, F2, F3, a, M, K)
    N_out = N_out or N
    un = fit(th, f / x ** (2 * m + 2), N_out).real()
    data = BoundaryData(2 * (m + 1), a, ut, un, trace)
    return DtNResult(un, residual_norm(data), cond, f, {"engine_residual": res, "K": K, "M": M})


def reconstruct_un(data, N_out=None):
    """Dispatch on alpha (even only)."""
    alpha = data.alpha
    if alpha % 2:
        raise NotImplementedError("Neumann reconstruction is available for even alpha only")
    if alpha <= 0:
        return reconstruct_un_negative(data.ut, 1 - alpha // 2, data.a, N_out)
    if data.trace is None:
        raise ValueError("positive alpha needs the trace of u")
    return reconstruct_un_positive(data.trace, data.ut, alpha // 2 - 1, data.a, N_out)


def reconstruct_ut(un, alpha, a, N_out=None):
    """Converse map u_n -> u_t through the conjugate v (sigma = x^alpha):
    v_t = x^alpha u_n, v solves the equation with -alpha, and u_t = -v_n / x^alpha."""
    if alpha % 2:
        raise NotImplementedError("even alpha only")
    N = un.N
    K, M = _sizes(N)
    th, _ = _grid(M)
    x = a + np.cos(th)
    vt = fit(th, x ** alpha * un.samples(M).real, N + 32).real()
    vt.coeffs[vt.N] = 0.0
    vdata = BoundaryData(-alpha, a, vt, None, trace_from_ut(vt, 0.0))
    vn = reconstruct_un(vdata).un
    ut = fit(th, -vn.samples(M).real / x ** alpha, N_out or N).real()
    ut.coeffs[ut.N] = 0.0
    return ut


def first_form_rank(m, a, N=16, tol=1e-10):
    """Rank of u_n -> oint [..]^{m} i x u_n ds over exterior k, for alpha = 2(m + 1).

    The first form's relation is polynomial in k of degree 2m + 1, so the map
    has rank at most 2m + 1 and cannot determine u_n.
    """
    M = 512
    th, e = _grid(M)
    z = a + e
    ks = np.r_[exterior_points(a, 64), exterior_points(a, 64, 5.0)]
    cols = [np.ones(M)] + [f(j * th) for j in range(1, N + 1) for f in (np.cos, np.sin)]
    A = np.array([[np.sum(((k - z) * (k + np.conj(z))) ** m * 1j * z.real * c) * 2 * np.pi / M for c in cols]
                  for k in ks])
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > tol * s[0])), len(cols)
