import numpy as np
import pytest

from gaspt_rh import dtn, oracles
from gaspt_rh.boundary import BoundaryData, TrigSeries


@pytest.fixture
def frame():
    return dtn.MobiusFrame(2.0)


def test_frame(frame):
    z1, z2 = frame.z1, frame.z2
    for z in (z1, z2):
        assert abs(z * z + 4 * z + 1) < 1e-14
    assert abs(z1 - z2 - frame.beta) < 1e-14
    # phi is an involution mapping the annulus to itself
    mu = 0.5 + 0.3j
    assert abs(frame.phi(frame.phi(mu)) - mu) < 1e-14
    assert frame.in_annulus(mu) and frame.in_annulus(frame.phi(mu))
    assert not frame.in_annulus(frame.inner_center)


def test_alpha_coeffs():
    assert np.allclose(dtn.alpha_coeffs(1), [1])
    assert np.allclose(dtn.alpha_coeffs(2), [-2, 1])
    assert np.allclose(dtn.alpha_coeffs(3), [12, -6, 1])


def test_beta_m1_is_inverse_factorial(frame):
    from math import factorial
    for n in range(8):
        assert abs(dtn.beta_coeff(1, 0, n, frame) - 1 / factorial(n)) < 1e-15


@pytest.mark.parametrize("m", [2, 3, 4])
def test_recurrence_coeff_matches_operator(m, frame):
    # coefficient of w^n in L[w^{n-l}], L applied through its definition about 0
    from math import factorial
    for n in (m, m + 3):
        for ell in range(m):
            basis = np.zeros(n - ell + 1, dtype=complex)
            basis[-1] = 1.0
            h = dtn.AnalyticCoeffs(basis, frame.z1).recenter(0.0)
            Lh = dtn.ode_apply(h, m, frame).recenter(frame.z1).taylor
            got = Lh[n] if n < Lh.size else 0.0
            assert abs(got - dtn.recurrence_coeff(m, ell, n, frame)) < 1e-9 * max(1, abs(got))
            ref = factorial(n) * (-frame.z1) ** (m - 1) * dtn.beta_coeff(m, ell, n, frame)
            assert abs(got - ref) < 1e-9 * max(1, abs(got))


def test_ode_solve_inverts_apply(frame):
    m = 3
    rng = np.random.default_rng(4)
    h = dtn.AnalyticCoeffs(rng.standard_normal(12) * 0.5 ** np.arange(12))
    H = dtn.ode_apply(h, m, frame).recenter(frame.z1)
    sol = dtn.ode_solve(H, m, frame, extra=10)
    z = np.array([0.1, -0.2 + 0.1j, 0.3j])
    assert np.allclose(sol(z), h(z), atol=1e-10)


def test_split_real():
    s = TrigSeries([0.25j, 1.0, 3.0, 1.0, -0.25j])
    g = dtn.split_real(s)
    th = np.linspace(0, 6, 13)
    e = np.exp(1j * th)
    total = g(e) + np.conj(g(e))
    assert np.allclose(total, s(th).real)


def test_phi_identity(frame, traces):
    d = traces("x3")
    g = dtn.split_real(d.ut, 40)
    for m in (1, 2, 3):
        for mu in (0.3 + 0.2j, -0.1 - 0.6j):
            assert frame.in_annulus(mu)
            lhs = dtn.phi_contour(g, mu, m, frame)
            rhs = dtn.phi_derivative(g, mu, m, frame)
            assert abs(lhs - rhs) < 1e-10 * max(1, abs(lhs))


def test_exterior_points_outside():
    ks = dtn.exterior_points(2.0)
    assert ks.size >= 20
    assert np.all(np.abs(ks - 2) > 1) and np.all(np.abs(ks + 2) > 1)


@pytest.mark.parametrize("name,m", [("x2-y2", 1), ("re-z-a-3", 1), ("x3", 2), ("x2+y2", 2)])
def test_reconstruct_negative(traces, name, m):
    d = traces(name)
    r = dtn.reconstruct_un_negative(d.ut, m, 2.0)
    assert (r.un - d.un).norm() < 1e-10 * d.un.norm()
    assert r.residual_norm < 1e-10 * max(1, d.norm())


def test_reconstruct_m3():
    for s in oracles.poly_solutions(-4, 5):
        d = oracles.boundary_trace(s, 2.0, 16)
        if d.un.norm() < 1e-12:
            continue
        r = dtn.reconstruct_un_negative(d.ut, 3, 2.0)
        assert (r.un - d.un).norm() < 1e-8 * d.un.norm()


def test_zero_data_gives_zero():
    r = dtn.reconstruct_un_negative(TrigSeries.zeros(8), 2, 2.0)
    assert r.un.norm() < 1e-14


def test_reconstruct_positive(traces):
    d = traces("3x-3y2/x")
    r = dtn.reconstruct_un(d)
    assert (r.un - d.un).norm() < 1e-10 * d.un.norm()


def test_converse_map(traces):
    for name in ("x3", "re-z-a-3"):
        d = traces(name)
        ut = dtn.reconstruct_ut(d.un, d.alpha, 2.0)
        assert (ut - d.ut).norm() < 1e-9 * d.ut.norm()


def test_first_form_rank():
    for m in (0, 1, 2):
        rank, ncols = dtn.first_form_rank(m, 2.0)
        assert rank == 2 * m + 1 < ncols


def test_odd_rejected(traces):
    with pytest.raises(NotImplementedError):
        dtn.reconstruct_un(traces("x2"))


def test_global_residual_odd_detects_perturbation(traces):
    d = traces("x2")
    k = dtn.exterior_points(2.0)
    good = max(abs(dtn.global_residual(d, kk)) for kk in k)
    bad_un = d.un + TrigSeries([0.05, 0, 0.05])
    bad = BoundaryData(d.alpha, d.a, d.ut, bad_un, d.trace)
    assert good < 1e-12 and max(abs(dtn.global_residual(bad, kk)) for kk in k) > 1e-3


def test_global_residual_rejects_interior_k(traces):
    with pytest.raises(ValueError):
        dtn.global_residual(traces("x"), 2.5)
