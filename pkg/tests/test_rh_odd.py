import numpy as np
import pytest

from gaspt_rh import oracles, rh_odd


def test_c_coeffs_odd():
    assert np.allclose(rh_odd.c_coeffs_odd(1), [2.0])
    assert abs(rh_odd.c_last(0) + 1) < 1e-15
    assert abs(rh_odd.c_last(1) - 2) < 1e-15


@pytest.mark.parametrize("name,m", [("x2-2y2", 0), ("x2", 1), ("4x4-16x2y2", 1)])
def test_solve_odd(traces, name, m):
    u = oracles.named(name)
    s = rh_odd.OddSolver(traces(name), m)
    for z in (2.3 + 0.4j, 1.4 - 0.2j, 2.0 + 0.01j):
        assert abs(s(z) - u.at(z)) < 1e-10 * max(1, abs(u.at(z)))


def test_literal_formula_misses_polar_term(traces):
    u = oracles.named("x2")
    s = rh_odd.OddSolver(traces("x2"), 1, corrected=False)
    assert abs(s(2.3 + 0.4j) - u.at(2.3 + 0.4j)) > 1e-2


def test_m2_boundary_only_unsupported():
    d = oracles.boundary_trace(oracles.poly_solutions(-3, 4)[-1], 2.0, 16)
    with pytest.raises(NotImplementedError):
        rh_odd.OddSolver(d, 2)
    rh_odd.OddSolver(d, 2, corrected=False).uncorrected(2.1 + 0.1j)


def test_jump_mirror_symmetry(traces):
    s = rh_odd.OddSolver(traces("x2"), 1)
    z = 2.2 + 0.3j
    k = 2 + np.exp(1.0j)
    assert abs(s.jump_at(z, -np.conj(k), 1) - np.conj(s.jump_at(z, k, 1))) < 1e-15


def test_jump_rejects_off_contour(traces):
    s = rh_odd.OddSolver(traces("x2"), 1)
    with pytest.raises(ValueError):
        s.jump_at(2.2 + 0.3j, 2.0 + 0.5j, 1)


def test_lifted_data_solves_shifted_equation(traces):
    lifted = rh_odd.lift_data(traces("x2"))
    assert lifted.alpha == 1
    # u = x^2 -> u_x / x = 2
    assert lifted.trace.norm() == pytest.approx(2.0 * np.sqrt(2 * np.pi), rel=1e-12)


def test_dense_outer_nodes_stay_finite(traces):
    # graded nodes within 1e-10 of z_r and z_l: the start determination and the
    # partner crossing must both be resolved
    u = oracles.named("4x4-16x2y2")
    s = rh_odd.OddSolver(traces("4x4-16x2y2"), 1, n_circle=4096, n_inner=96)
    for z in (1.614 - 0.643j, 2.1 + 0.05j):
        assert abs(s(z) - u.at(z)) < 1e-10 * abs(u.at(z))
