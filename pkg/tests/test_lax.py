import numpy as np
import pytest

from gaspt_rh import lax


def test_lambda_ref_squares_and_infinity():
    zp = 2.3 + 0.5j
    k = np.array([4 + 1j, -3 - 2j, 0.1 + 3j, 50.0 + 0j])
    lam = lax.lambda_ref(zp, k)
    assert np.allclose(lam ** 2, (k - zp) * (k + np.conj(zp)))
    assert abs(lam[-1] - (k[-1] - 0.5j)) < 0.1


def test_lambda_ref_rejects_cut_and_limit_sides():
    zp = 2.0 + 0.5j
    with pytest.raises(ValueError):
        lax.lambda_ref(zp, 0.3 + 0.5j)
    up = lax.lambda_ref(zp, 0.3 + 0.5j + 1e-9j, check=False)
    dn = lax.lambda_ref(zp, 0.3 + 0.5j - 1e-9j, check=False)
    assert abs(up - lax.lambda_limit(zp, 0.3 + 0.5j, 1)) < 1e-6
    assert abs(dn - lax.lambda_limit(zp, 0.3 + 0.5j, -1)) < 1e-6


def test_tracking_matches_continuation():
    # brute-force continuation of the square root along the circle
    a, k = 2.0, 0.4 + 0.3j
    th = np.linspace(0, 2 * np.pi, 20001)
    zp = a + np.exp(1j * th)
    ref = lax.lambda_ref(zp, k, check=False)
    cont = np.empty_like(ref)
    cont[0] = ref[0]
    for i in range(1, th.size):
        r = np.sqrt((k - zp[i]) * (k + np.conj(zp[i])))
        cont[i] = r if abs(r - cont[i - 1]) < abs(r + cont[i - 1]) else -r
    signs = lax.lambda_track(th, k, a)
    assert np.allclose(signs * ref, cont, atol=1e-6)
    # a full turn returns to the starting determination
    assert signs[-1] == 1


def test_W_eval_even_matches_segment_form():
    a, th, k = 2.0, 0.7, 4.0 + 1j
    ut, un = 0.3, -0.8
    zp = a + np.exp(1j * th)
    tau = 1j * np.exp(1j * th)
    uz = 0.5 * (ut + 1j * un) / tau  # u_z tau + u_zbar conj(tau) = u_t
    uzb = np.conj(uz)
    w1 = lax.W_eval(th, k, -2, ut, un, a)
    w2 = lax.W_segment(zp, tau, k, -2, uz, uzb)
    assert abs(w1 - w2) < 1e-14


def test_W2_requires_branch_for_odd():
    with pytest.raises(ValueError):
        lax.W2_eval(2.0 + 0.1j, 1j, 4.0 + 0j, 1, 1.0, 0.5, 0.5)


def test_tangential_derivative_recursion():
    # F_1 against a finite-difference derivative of the kernel
    from gaspt_rh.boundary import TrigSeries
    ut = TrigSeries([0.2j, 0.1, 0, 0.1, -0.2j])
    un = TrigSeries([0, 0.5, 0.3, 0.5, 0])
    a, k, p0 = 2.0, 2.1 + 0.2j, 1.5
    F = lax.tangential_derivatives(ut, un, a, p0, 2)
    th, h = 0.9, 1e-5

    def w(t):
        zp = a + np.exp(1j * t)
        return (k + np.conj(zp)) ** (-p0) * F[0](np.array([t]), np.array([k]))[0]
    tau = 1j * np.exp(1j * th)
    fd = (w(th + h) - w(th - h)) / (2 * h) / tau
    zp = a + np.exp(1j * th)
    exact = (k + np.conj(zp)) ** (-p0 - 1) * F[1](np.array([th]), np.array([k]))[0]
    assert abs(fd - exact) < 1e-8 * abs(exact)
